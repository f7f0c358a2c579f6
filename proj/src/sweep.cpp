#include "wcg/sweep.hpp"

#include <atomic>
#include <map>
#include <stdexcept>
#include <thread>

namespace wcg {

namespace {

std::string member_set_string(const std::vector<int>& members) {
  std::string out = "{";
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(members[i]);
  }
  out += '}';
  return out;
}

int effective_jobs(int jobs) {
  if (jobs > 0) return jobs;
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(hw) : 1;
}

template <typename Task, typename Fn>
void run_parallel(std::vector<Task>& tasks, int jobs, Fn fn) {
  std::atomic<std::size_t> cursor{0};
  auto worker = [&] {
    for (;;) {
      std::size_t i = cursor.fetch_add(1);
      if (i >= tasks.size()) return;
      fn(tasks[i]);
    }
  };
  int n = std::min<int>(effective_jobs(jobs), static_cast<int>(tasks.size()));
  if (n <= 1) {
    worker();
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(n);
  for (int t = 0; t < n; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
}

}  // namespace

void CampaignConfig::validate() const {
  if (depth < 4)
    throw std::invalid_argument("campaign depth must be >= 4 (binary generators need 4 syllables)");
  if (window < 1) throw std::invalid_argument("campaign window must be >= 1");
  if (max_order < 1) throw std::invalid_argument("max order must be positive");
}

CampaignResult run_decomposition_campaign(const Catalog& catalog,
                                          const CampaignConfig& config) {
  config.validate();
  std::vector<std::string> labels =
      config.groups.empty() ? catalog.labels() : config.groups;

  OracleParams params{config.depth, config.window, config.cost_cap};

  struct Task {
    GroupPtr d;
    std::string label;
    Subgroup x, y, w;           // x index <= y index; symmetric partner shares this task
    bool emit_swapped = false;  // also stands for (y, x, w)
    CommutatorReport report;
    bool normal_xy = false;
    bool huq_ok = true;
    bool vanishing_ok = true;
    bool failed = false;
    std::string error;
  };

  std::vector<Task> tasks;
  for (const auto& label : labels) {
    GroupPtr d = catalog.find(label);
    if (d->order() > config.max_order) continue;
    auto subs = all_subgroups(d);
    for (std::size_t i = 0; i < subs.size(); ++i)
      for (std::size_t j = i; j < subs.size(); ++j)
        for (std::size_t k = 0; k < subs.size(); ++k) {
          Task t;
          t.d = d;
          t.label = label;
          t.x = subs[i];
          t.y = subs[j];
          t.w = subs[k];
          t.emit_swapped = i != j;
          tasks.push_back(std::move(t));
        }
  }

  run_parallel(tasks, config.jobs, [&](Task& t) {
    try {
      Homomorphism x = subgroup_as_group(t.x, "X").inclusion;
      Homomorphism y = subgroup_as_group(t.y, "Y").inclusion;
      Homomorphism w = subgroup_as_group(t.w, "W").inclusion;
      WeightedCospan cospan(x, y, w);
      std::string subject = t.label + " X=" + member_set_string(t.x.members) +
                            " Y=" + member_set_string(t.y.members) +
                            " W=" + member_set_string(t.w.members);
      t.report = verify_decomposition(cospan, params, subject);
      t.normal_xy = is_normal(t.x) && is_normal(t.y);

      if (t.w.is_trivial()) {
        Subgroup binary = higgins_binary(t.x, t.y);
        t.huq_ok = subgroups_equal(t.report.formula, binary);
      }
      if (t.normal_xy && t.report.oracle) {
        bool both_vanish = higgins_binary(t.x, t.y).is_trivial() &&
                           higgins_ternary(t.x, t.y, t.w).is_trivial();
        t.vanishing_ok = t.report.oracle->is_trivial() == both_vanish;
      }
    } catch (const std::exception& e) {
      t.failed = true;
      t.error = e.what();
    }
  });

  CampaignResult result;
  // weight independence: for normal (X, Y), the commuting verdict must not
  // depend on which W was attached
  std::map<std::string, std::pair<bool, bool>> verdicts;  // key -> (first verdict, violated)
  for (const Task& t : tasks) {
    int copies = t.emit_swapped ? 2 : 1;
    for (int c = 0; c < copies; ++c) {
      result.summary.instances += 1;
      result.reports.push_back(t.report);
      if (c == 1) {
        result.reports.back().subject =
            t.label + " X=" + member_set_string(t.y.members) +
            " Y=" + member_set_string(t.x.members) +
            " W=" + member_set_string(t.w.members);
      }
    }
    if (t.failed) {
      CommutatorReport& r = result.reports.back();
      r.subject += " ERROR: " + t.error;
      result.summary.unstable += copies;
      continue;
    }
    if (!t.report.equal) result.summary.mismatches += copies;
    if (!t.report.stable) result.summary.unstable += copies;
    if (!t.huq_ok) result.summary.huq_violations += copies;
    if (!t.vanishing_ok) result.summary.vanishing_violations += copies;
    if (t.normal_xy) {
      std::string key = t.label + "|" + member_set_string(t.x.members) + "|" +
                        member_set_string(t.y.members);
      bool commutes = t.report.formula.is_trivial();
      auto [it, inserted] = verdicts.try_emplace(key, commutes, false);
      if (!inserted && it->second.first != commutes && !it->second.second) {
        it->second.second = true;
        result.summary.weight_dependence_violations += 1;
      }
    }
  }
  return result;
}

void for_each_split_diagram(
    const Catalog& catalog, int max_order,
    const std::vector<std::string>& base_labels,
    const std::function<void(const AdmissibilityDiagram&, const PullbackGroup&)>&
        visit) {
  std::vector<GroupPtr> pool;
  for (const auto& label : catalog.labels()) {
    GroupPtr g = catalog.find(label);
    if (g->order() <= max_order) pool.push_back(g);
  }

  std::map<std::pair<const FiniteGroup*, const FiniteGroup*>,
           std::vector<Homomorphism>>
      hom_cache;
  auto homs = [&](const GroupPtr& a, const GroupPtr& b)
      -> const std::vector<Homomorphism>& {
    auto key = std::make_pair(a.get(), b.get());
    auto it = hom_cache.find(key);
    if (it == hom_cache.end())
      it = hom_cache.emplace(key, enumerate_homomorphisms(a, b)).first;
    return it->second;
  };

  struct SplitEpi {
    Homomorphism f;  // A -> B
    Homomorphism r;  // section
  };

  for (const auto& base_label : base_labels) {
    GroupPtr b = catalog.find(base_label);

    std::vector<SplitEpi> splits;
    for (const GroupPtr& a : pool) {
      for (const auto& f : homs(a, b))
        for (const auto& r : homs(b, a)) {
          bool section = true;
          for (int v = 0; v < b->order() && section; ++v)
            if (f(r(v)) != v) section = false;
          if (section) splits.push_back(SplitEpi{f, r});
        }
    }

    for (const auto& left : splits)
      for (const auto& right : splits) {
        PullbackGroup pb = pullback(left.f, right.f, left.r, right.r);
        for (const GroupPtr& d : pool) {
          for (const auto& alpha : homs(left.f.source(), d)) {
            Homomorphism beta = Homomorphism::compose(alpha, left.r);
            for (const auto& gamma : homs(right.f.source(), d)) {
              bool compatible = true;
              for (int v = 0; v < b->order() && compatible; ++v)
                if (gamma(right.r(v)) != beta(v)) compatible = false;
              if (!compatible) continue;
              AdmissibilityDiagram diagram(left.f, left.r, right.f, right.r,
                                           alpha, beta, gamma);
              visit(diagram, pb);
            }
          }
        }
      }
  }
}

}  // namespace wcg
