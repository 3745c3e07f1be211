#include "fdtsim/graphs.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>

#include <fmt/format.h>
#include <fmt/ranges.h>

namespace fdtsim::graphs {
namespace {

std::string format_assignment(const Assignment& a) {
  std::vector<std::string> parts;
  parts.reserve(a.size());
  for (const auto& [var, label] : a) parts.push_back(fmt::format("{}={}", var, label));
  return fmt::format("{{{}}}", fmt::join(parts, ", "));
}

std::size_t label_index(const Variable& v, std::string_view label) {
  const auto it = std::find(v.domain.begin(), v.domain.end(), label);
  if (it == v.domain.end()) {
    throw ModelError(fmt::format("variable '{}' has no value '{}'", v.id, label));
  }
  return static_cast<std::size_t>(it - v.domain.begin());
}

// Index-based view of a validated model. Holds pointers into the model it
// was built from, which must outlive it.
class CompiledModel {
 public:
  explicit CompiledModel(const CausalModel& model) : model_(model) {
    auto diagnostics = validate_model(model);
    if (!diagnostics.empty()) {
      std::vector<std::string> lines;
      for (const auto& d : diagnostics) lines.push_back(d.message);
      throw ModelError(fmt::format("invalid causal model: {}", fmt::join(lines, "; ")));
    }
    for (std::size_t i = 0; i < model.variables.size(); ++i) {
      index_.emplace(model.variables[i].id, i);
      card_.push_back(model.variables[i].domain.size());
    }
    factors_.resize(model.variables.size());
    for (const auto& cpt : model.cpts) {
      Factor& f = factors_[index_.at(cpt.child)];
      f.rows = &cpt.rows;
      for (const auto& p : cpt.parents) f.parents.push_back(index_.at(p));
    }
    for (const auto& s : model.utility.scope) utility_scope_.push_back(index_.at(s));
  }

  std::size_t index_of(std::string_view id) const {
    const auto it = index_.find(id);
    if (it == index_.end()) throw ModelError(fmt::format("unknown variable '{}'", id));
    return it->second;
  }

  // Value index per variable, or kFree.
  std::vector<std::size_t> bind(const Assignment& evidence) const {
    std::vector<std::size_t> fixed(card_.size(), kFree);
    for (const auto& [var, label] : evidence) {
      const std::size_t i = index_of(var);
      fixed[i] = label_index(model_.variables[i], label);
    }
    return fixed;
  }

  // Calls visit(state, probability) for every full assignment consistent
  // with `fixed` that has nonzero probability.
  void enumerate(const std::vector<std::size_t>& fixed,
                 const std::function<void(const std::vector<std::size_t>&, double)>& visit) const {
    std::vector<std::size_t> state(card_.size(), 0);
    std::vector<std::size_t> free_vars;
    for (std::size_t i = 0; i < card_.size(); ++i) {
      if (fixed[i] == kFree) {
        free_vars.push_back(i);
      } else {
        state[i] = fixed[i];
      }
    }
    while (true) {
      const double p = joint(state);
      if (p > 0.0) visit(state, p);
      // Odometer step over the free variables, last one fastest.
      bool advanced = false;
      for (std::size_t k = free_vars.size(); k > 0 && !advanced; --k) {
        const std::size_t v = free_vars[k - 1];
        if (++state[v] < card_[v]) {
          advanced = true;
        } else {
          state[v] = 0;
        }
      }
      if (!advanced) return;
    }
  }

  double utility(const std::vector<std::size_t>& state) const {
    std::size_t row = 0;
    for (std::size_t s : utility_scope_) row = row * card_[s] + state[s];
    return model_.utility.values[row];
  }

  static constexpr std::size_t kFree = static_cast<std::size_t>(-1);

 private:
  struct Factor {
    std::vector<std::size_t> parents;
    const std::vector<std::vector<double>>* rows = nullptr;
  };

  double joint(const std::vector<std::size_t>& state) const {
    double p = 1.0;
    for (std::size_t v = 0; v < factors_.size() && p > 0.0; ++v) {
      const Factor& f = factors_[v];
      std::size_t row = 0;
      for (std::size_t parent : f.parents) row = row * card_[parent] + state[parent];
      p *= (*f.rows)[row][state[v]];
    }
    return p;
  }

  const CausalModel& model_;
  std::map<std::string, std::size_t, std::less<>> index_;
  std::vector<std::size_t> card_;
  std::vector<Factor> factors_;
  std::vector<std::size_t> utility_scope_;
};

void require_valid_problem(const DecisionProblem& problem) {
  const auto diagnostics = validate_problem(problem);
  if (diagnostics.empty()) return;
  std::vector<std::string> lines;
  for (const auto& d : diagnostics) lines.push_back(d.message);
  throw ModelError(fmt::format("invalid decision problem: {}", fmt::join(lines, "; ")));
}

const Variable& require_variable(const CausalModel& model, std::string_view id) {
  const Variable* v = model.find_variable(id);
  if (v == nullptr) throw ModelError(fmt::format("unknown variable '{}'", id));
  return *v;
}

}  // namespace

const Variable* CausalModel::find_variable(std::string_view id) const {
  for (const auto& v : variables) {
    if (v.id == id) return &v;
  }
  return nullptr;
}

const Cpt* CausalModel::find_cpt(std::string_view child) const {
  for (const auto& c : cpts) {
    if (c.child == child) return &c;
  }
  return nullptr;
}

double EvaluationReport::value_of(std::string_view action) const {
  for (const auto& v : values) {
    if (v.action == action) return v.expected_utility;
  }
  throw ModelError(fmt::format("report has no action '{}'", action));
}

std::string_view to_string(Theory theory) {
  switch (theory) {
    case Theory::kEdt: return "edt";
    case Theory::kCdt: return "cdt";
    case Theory::kFdt: return "fdt";
  }
  return "?";
}

std::optional<Theory> parse_theory(std::string_view text) {
  if (text == "edt" || text == "EDT") return Theory::kEdt;
  if (text == "cdt" || text == "CDT") return Theory::kCdt;
  if (text == "fdt" || text == "FDT") return Theory::kFdt;
  return std::nullopt;
}

std::string_view to_string(Diagnostic::Kind kind) {
  using K = Diagnostic::Kind;
  switch (kind) {
    case K::kEmptyDomain: return "empty domain";
    case K::kDuplicateLabel: return "duplicate label";
    case K::kDuplicateVariable: return "duplicate variable";
    case K::kMissingCpt: return "missing cpt";
    case K::kDuplicateCpt: return "duplicate cpt";
    case K::kDanglingReference: return "dangling reference";
    case K::kCycle: return "cycle";
    case K::kMissingRow: return "missing row";
    case K::kExtraRow: return "extra row";
    case K::kRowLength: return "row length";
    case K::kEntryOutOfRange: return "entry out of range";
    case K::kRowNotNormalized: return "row not normalized";
    case K::kUtilityShape: return "utility shape";
    case K::kBadProblem: return "bad problem";
  }
  return "?";
}

ZeroProbabilityEvidence::ZeroProbabilityEvidence(const Assignment& evidence)
    : ModelError(fmt::format("evidence has probability zero: {}", format_assignment(evidence))),
      evidence_(evidence) {}

std::vector<Diagnostic> validate_model(const CausalModel& model) {
  using K = Diagnostic::Kind;
  std::vector<Diagnostic> out;
  auto report = [&out](K kind, std::string message) {
    out.push_back({kind, fmt::format("{}: {}", to_string(kind), message)});
  };

  std::map<std::string, const Variable*, std::less<>> vars;
  for (const auto& v : model.variables) {
    if (!vars.emplace(v.id, &v).second) report(K::kDuplicateVariable, v.id);
    if (v.domain.empty()) report(K::kEmptyDomain, v.id);
    std::set<std::string_view> seen;
    for (const auto& label : v.domain) {
      if (!seen.insert(label).second) report(K::kDuplicateLabel, fmt::format("{}.{}", v.id, label));
    }
  }

  std::map<std::string, const Cpt*, std::less<>> cpts;
  for (const auto& cpt : model.cpts) {
    const auto child = vars.find(cpt.child);
    if (child == vars.end()) {
      report(K::kDanglingReference, fmt::format("table for unknown variable '{}'", cpt.child));
      continue;
    }
    if (!cpts.emplace(cpt.child, &cpt).second) {
      report(K::kDuplicateCpt, cpt.child);
      continue;
    }
    bool parents_ok = true;
    std::size_t expected_rows = 1;
    for (const auto& p : cpt.parents) {
      const auto parent = vars.find(p);
      if (parent == vars.end()) {
        report(K::kDanglingReference, fmt::format("'{}' lists unknown parent '{}'", cpt.child, p));
        parents_ok = false;
      } else {
        expected_rows *= parent->second->domain.size();
      }
    }
    if (!parents_ok) continue;
    if (cpt.rows.size() < expected_rows) {
      report(K::kMissingRow, fmt::format("'{}' has {} of {} parent rows", cpt.child,
                                         cpt.rows.size(), expected_rows));
    } else if (cpt.rows.size() > expected_rows) {
      report(K::kExtraRow, fmt::format("'{}' has {} rows, expected {}", cpt.child,
                                       cpt.rows.size(), expected_rows));
    }
    const std::size_t width = child->second->domain.size();
    for (std::size_t r = 0; r < cpt.rows.size(); ++r) {
      const auto& row = cpt.rows[r];
      if (row.size() != width) {
        report(K::kRowLength, fmt::format("'{}' row {} has {} entries, expected {}",
                                          cpt.child, r, row.size(), width));
        continue;
      }
      double sum = 0.0;
      bool in_range = true;
      for (double x : row) {
        if (!std::isfinite(x) || x < 0.0 || x > 1.0) in_range = false;
        sum += x;
      }
      if (!in_range) {
        report(K::kEntryOutOfRange, fmt::format("'{}' row {}", cpt.child, r));
      } else if (std::abs(sum - 1.0) > kRowSumTolerance) {
        report(K::kRowNotNormalized, fmt::format("'{}' row {} sums to {}", cpt.child, r, sum));
      }
    }
  }
  for (const auto& v : model.variables) {
    if (!cpts.contains(v.id) && vars.at(v.id) == &v) report(K::kMissingCpt, v.id);
  }

  // Kahn's algorithm over the resolvable parent edges.
  std::map<std::string_view, std::size_t> indegree;
  std::map<std::string_view, std::vector<std::string_view>> children;
  for (const auto& [id, _] : vars) indegree[id] = 0;
  for (const auto& [child, cpt] : cpts) {
    for (const auto& p : cpt->parents) {
      if (!vars.contains(p)) continue;
      ++indegree[child];
      children[p].push_back(child);
    }
  }
  std::vector<std::string_view> ready;
  for (const auto& [id, d] : indegree) {
    if (d == 0) ready.push_back(id);
  }
  std::size_t visited = 0;
  while (!ready.empty()) {
    const auto id = ready.back();
    ready.pop_back();
    ++visited;
    for (const auto c : children[id]) {
      if (--indegree[c] == 0) ready.push_back(c);
    }
  }
  if (visited < indegree.size()) {
    std::vector<std::string_view> stuck;
    for (const auto& [id, d] : indegree) {
      if (d > 0) stuck.push_back(id);
    }
    report(K::kCycle, fmt::format("parent graph is cyclic through {}", fmt::join(stuck, ", ")));
  }

  std::size_t utility_size = 1;
  bool scope_ok = true;
  for (const auto& s : model.utility.scope) {
    const auto it = vars.find(s);
    if (it == vars.end()) {
      report(K::kDanglingReference, fmt::format("utility scope names unknown variable '{}'", s));
      scope_ok = false;
    } else {
      utility_size *= it->second->domain.size();
    }
  }
  if (scope_ok) {
    if (model.utility.values.size() != utility_size) {
      report(K::kUtilityShape, fmt::format("utility has {} entries, scope needs {}",
                                           model.utility.values.size(), utility_size));
    } else if (!std::all_of(model.utility.values.begin(), model.utility.values.end(),
                            [](double u) { return std::isfinite(u); })) {
      report(K::kUtilityShape, "utility has a non-finite entry");
    }
  }
  return out;
}

std::vector<Diagnostic> validate_problem(const DecisionProblem& problem) {
  using K = Diagnostic::Kind;
  auto out = validate_model(problem.model);
  auto bad = [&out](std::string message) {
    out.push_back({K::kBadProblem, fmt::format("bad problem: {}", message)});
  };
  const CausalModel& m = problem.model;
  const Variable* action = m.find_variable(problem.action_var);
  if (action == nullptr) bad(fmt::format("unknown action variable '{}'", problem.action_var));
  if (problem.decision_fn_var) {
    const Variable* fn = m.find_variable(*problem.decision_fn_var);
    if (fn == nullptr) {
      bad(fmt::format("unknown decision-function variable '{}'", *problem.decision_fn_var));
    } else if (action != nullptr) {
      if (fn->domain != action->domain) {
        bad(fmt::format("'{}' and '{}' have different domains", fn->id, action->id));
      }
      const Cpt* cpt = m.find_cpt(action->id);
      if (cpt != nullptr &&
          std::find(cpt->parents.begin(), cpt->parents.end(), fn->id) == cpt->parents.end()) {
        bad(fmt::format("'{}' does not list '{}' as a parent", action->id, fn->id));
      }
    }
  }
  for (const auto& [var, label] : problem.evidence) {
    const Variable* v = m.find_variable(var);
    if (v == nullptr) {
      bad(fmt::format("evidence names unknown variable '{}'", var));
    } else if (std::find(v->domain.begin(), v->domain.end(), label) == v->domain.end()) {
      bad(fmt::format("evidence gives '{}' unknown value '{}'", var, label));
    }
  }
  return out;
}

std::vector<double> infer(const CausalModel& model, const Assignment& evidence,
                          std::string_view query) {
  const CompiledModel compiled(model);
  const std::size_t q = compiled.index_of(query);
  const auto fixed = compiled.bind(evidence);
  std::vector<double> posterior(model.variables[q].domain.size(), 0.0);
  double total = 0.0;
  compiled.enumerate(fixed, [&](const std::vector<std::size_t>& state, double p) {
    posterior[state[q]] += p;
    total += p;
  });
  if (!(total > 0.0)) throw ZeroProbabilityEvidence(evidence);
  for (double& x : posterior) x /= total;
  return posterior;
}

double expected_utility(const CausalModel& model, const Assignment& evidence) {
  const CompiledModel compiled(model);
  const auto fixed = compiled.bind(evidence);
  double total = 0.0;
  double weighted = 0.0;
  compiled.enumerate(fixed, [&](const std::vector<std::size_t>& state, double p) {
    total += p;
    weighted += p * compiled.utility(state);
  });
  if (!(total > 0.0)) throw ZeroProbabilityEvidence(evidence);
  return weighted / total;
}

CausalModel intervene(const CausalModel& model, std::string_view var, std::string_view value) {
  const Variable& v = require_variable(model, var);
  const std::size_t k = label_index(v, value);
  CausalModel out = model;
  for (auto& cpt : out.cpts) {
    if (cpt.child != var) continue;
    cpt.parents.clear();
    std::vector<double> point(v.domain.size(), 0.0);
    point[k] = 1.0;
    cpt.rows = {std::move(point)};
  }
  return out;
}

CausalModel intervene_decision_function(const CausalModel& model, std::string_view decision_fn,
                                        std::string_view action, std::string_view value) {
  const Variable& fn = require_variable(model, decision_fn);
  const Variable& act = require_variable(model, action);
  if (fn.domain != act.domain) {
    throw ModelError(fmt::format("'{}' and '{}' have different domains", fn.id, act.id));
  }
  CausalModel out = intervene(model, decision_fn, value);
  const std::size_t n = act.domain.size();
  for (auto& cpt : out.cpts) {
    if (cpt.child != action) continue;
    cpt.parents = {std::string(decision_fn)};
    cpt.rows.assign(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) cpt.rows[i][i] = 1.0;
  }
  return out;
}

double evaluate_edt(const DecisionProblem& problem, std::string_view action) {
  require_valid_problem(problem);
  label_index(*problem.model.find_variable(problem.action_var), action);
  Assignment evidence = problem.evidence;
  const auto it = evidence.find(problem.action_var);
  if (it != evidence.end() && it->second != action) {
    Assignment conflicting = evidence;
    conflicting[problem.action_var] = std::string(action);
    throw ZeroProbabilityEvidence(conflicting);
  }
  evidence[problem.action_var] = std::string(action);
  return expected_utility(problem.model, evidence);
}

double evaluate_cdt(const DecisionProblem& problem, std::string_view action) {
  require_valid_problem(problem);
  const CausalModel mutilated = intervene(problem.model, problem.action_var, action);
  return expected_utility(mutilated, problem.evidence);
}

double evaluate_fdt(const DecisionProblem& problem, std::string_view action) {
  require_valid_problem(problem);
  if (!problem.decision_fn_var) {
    throw ModelError("FDT evaluation needs a decision-function variable; this problem has none");
  }
  const CausalModel mutilated = intervene_decision_function(
      problem.model, *problem.decision_fn_var, problem.action_var, action);
  return expected_utility(mutilated, problem.evidence);
}

double evaluate(const DecisionProblem& problem, Theory theory, std::string_view action) {
  switch (theory) {
    case Theory::kEdt: return evaluate_edt(problem, action);
    case Theory::kCdt: return evaluate_cdt(problem, action);
    case Theory::kFdt: return evaluate_fdt(problem, action);
  }
  throw ModelError("unknown theory");
}

EvaluationReport decide(const DecisionProblem& problem, Theory theory) {
  require_valid_problem(problem);
  const Variable& action = *problem.model.find_variable(problem.action_var);
  EvaluationReport report;
  report.theory = theory;
  std::size_t best = 0;
  for (std::size_t i = 0; i < action.domain.size(); ++i) {
    const double eu = evaluate(problem, theory, action.domain[i]);
    report.values.push_back({action.domain[i], eu});
    const double incumbent = report.values[best].expected_utility;
    if (eu - incumbent > 1e-12 * std::max(1.0, std::abs(incumbent))) best = i;
  }
  report.chosen = report.values[best].action;
  if (problem.decision_fn_var) report.policy_value = evaluate_fdt(problem, report.chosen);
  return report;
}

}  // namespace fdtsim::graphs
