#include "wcg/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace wcg {

using nlohmann::json;

GroupPtr load_group(const json& spec, int order_cap) {
  if (!spec.is_object()) throw std::invalid_argument("group description must be an object");
  std::string label = spec.value("label", std::string{});
  std::string kind = spec.at("kind").get<std::string>();
  if (kind == "cayley") {
    auto rows = spec.at("table").get<std::vector<std::vector<int>>>();
    if (label.empty()) label = "G" + std::to_string(rows.size());
    if (static_cast<int>(rows.size()) > order_cap)
      throw std::runtime_error("group order exceeds order cap");
    return make_group(label, rows);
  }
  if (kind == "perm") {
    int degree = spec.at("degree").get<int>();
    auto gens = spec.at("generators").get<std::vector<std::vector<int>>>();
    if (label.empty()) label = "Perm" + std::to_string(degree);
    return group_from_permutations(label, degree, gens, order_cap);
  }
  if (kind == "cyclic") {
    int n = spec.at("n").get<int>();
    if (n > order_cap) throw std::runtime_error("group order exceeds order cap");
    GroupPtr g = cyclic_group(n);
    if (!label.empty() && label != g->label()) {
      // rebuild under the requested label
      std::vector<std::uint16_t> table(static_cast<std::size_t>(n) * n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          table[static_cast<std::size_t>(i) * n + j] =
              static_cast<std::uint16_t>(g->mul(i, j));
      return make_group(label, n, std::move(table));
    }
    return g;
  }
  throw std::invalid_argument("unknown group kind '" + kind + "'");
}

GroupPtr load_group_file(const std::string& path, int order_cap) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open group file '" + path + "'");
  json spec;
  in >> spec;
  return load_group(spec, order_cap);
}

Subgroup load_subgroup(const json& ref, const Catalog& catalog) {
  GroupPtr g = catalog.find(ref.at("group").get<std::string>());
  if (ref.contains("members")) {
    auto members = ref.at("members").get<std::vector<int>>();
    Subgroup h = generate_subgroup(g, members);
    std::sort(members.begin(), members.end());
    if (members.empty() || members.front() != FiniteGroup::kIdentity)
      members.insert(members.begin(), FiniteGroup::kIdentity);
    if (h.members != members)
      throw std::invalid_argument("member list is not closed under the group operations");
    return h;
  }
  if (ref.contains("generators")) {
    auto gens = ref.at("generators").get<std::vector<int>>();
    return generate_subgroup(g, gens);
  }
  throw std::invalid_argument("subgroup reference needs 'members' or 'generators'");
}

Homomorphism load_homomorphism(const json& ref, const Catalog& catalog) {
  GroupPtr src = catalog.find(ref.at("source").get<std::string>());
  GroupPtr dst = catalog.find(ref.at("target").get<std::string>());
  auto images = ref.at("images").get<std::vector<int>>();
  return Homomorphism(std::move(src), std::move(dst), std::move(images));
}

Homomorphism load_homomorphism_file(const std::string& path, const Catalog& catalog) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open homomorphism file '" + path + "'");
  json ref;
  in >> ref;
  return load_homomorphism(ref, catalog);
}

namespace {

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    out.push_back(std::stoi(item));
  }
  return out;
}

}  // namespace

Subgroup parse_subgroup_token(GroupPtr parent, const std::string& token) {
  if (token == "all") return full_subgroup(std::move(parent));
  if (token == "trivial") return trivial_subgroup(std::move(parent));
  if (token.rfind("members:", 0) == 0) {
    auto members = parse_int_list(token.substr(8));
    Subgroup h = generate_subgroup(parent, members);
    std::sort(members.begin(), members.end());
    if (members.empty() || members.front() != 0) members.insert(members.begin(), 0);
    if (h.members != members)
      throw std::invalid_argument("member list is not closed under the group operations");
    return h;
  }
  std::string body = token.rfind("gens:", 0) == 0 ? token.substr(5) : token;
  return generate_subgroup(std::move(parent), parse_int_list(body));
}

Homomorphism parse_hom_token(GroupPtr d, const std::string& token,
                             const Catalog& catalog) {
  if (token == "id") return Homomorphism::identity(std::move(d));
  if (token == "trivial") return Homomorphism::trivial(cyclic_group(1), std::move(d));
  if (token.rfind("incl:", 0) == 0) {
    Subgroup h = parse_subgroup_token(d, token.substr(5));
    return subgroup_as_group(h, d->label() + "-sub").inclusion;
  }
  if (token.rfind("file:", 0) == 0) {
    Homomorphism h = load_homomorphism_file(token.substr(5), catalog);
    if (h.target() != d)
      throw std::invalid_argument("homomorphism target is not the cospan codomain");
    return h;
  }
  throw std::invalid_argument("unrecognized homomorphism token '" + token + "'");
}

json report_to_json(const CommutatorReport& report) {
  json j;
  j["subject"] = report.subject;
  j["formula"] = report.formula.members;
  if (report.oracle)
    j["oracle"] = report.oracle->members;
  else
    j["oracle"] = nullptr;
  j["equal"] = report.equal;
  j["depth"] = report.depth;
  j["last_growth"] = report.last_growth;
  j["stable"] = report.stable;
  return j;
}

std::string report_to_csv_row(const CommutatorReport& report) {
  auto join_ints = [](const std::vector<int>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) out += ' ';
      out += std::to_string(v[i]);
    }
    return out;
  };
  // the subject may itself contain commas (member sets), so it is quoted
  std::string row = '"' + report.subject + '"';
  row += ',';
  row += join_ints(report.formula.members);
  row += ',';
  row += report.oracle ? join_ints(report.oracle->members) : std::string{};
  row += ',';
  row += report.equal ? "true" : "false";
  row += ',';
  row += std::to_string(report.depth);
  row += ',';
  row += std::to_string(report.last_growth);
  row += ',';
  row += report.stable ? "true" : "false";
  return row;
}

}  // namespace wcg
