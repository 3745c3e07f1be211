#ifndef FDTSIM_GRAPHS_HPP_
#define FDTSIM_GRAPHS_HPP_

// Discrete causal models with exact inference by full-joint enumeration, and
// the three ways of scoring an action on them:
//
//   EDT  conditions on the action like any other observation;
//   CDT  performs do(action): the action variable loses its parents and
//        becomes a point mass, so only its effects move;
//   FDT  performs do(decision function = action): the decision-function
//        variable becomes a point mass, the action variable follows it alone,
//        and every other child of the decision function (a predictor, a twin)
//        is updated through its unchanged table.
//
// Models are small (a handful of variables) so every query enumerates the
// whole joint distribution. Values are plain data; every operation is a pure
// function of its arguments.

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace fdtsim::graphs {

struct Variable {
  std::string id;
  std::vector<std::string> domain;  // ordered value labels
};

// Conditional probability table for `child`. Rows are indexed by the full
// parent assignment in mixed-radix order: the first listed parent varies
// slowest, the last fastest. A root variable has no parents and one row.
struct Cpt {
  std::string child;
  std::vector<std::string> parents;
  std::vector<std::vector<double>> rows;
};

// Utility over assignments of `scope`, laid out in the same mixed-radix order
// as Cpt rows.
struct UtilityTable {
  std::vector<std::string> scope;
  std::vector<double> values;
};

struct CausalModel {
  std::vector<Variable> variables;
  std::vector<Cpt> cpts;
  UtilityTable utility;

  const Variable* find_variable(std::string_view id) const;
  const Cpt* find_cpt(std::string_view child) const;
};

// Partial assignment: variable id -> value label.
using Assignment = std::map<std::string, std::string, std::less<>>;

struct DecisionProblem {
  CausalModel model;
  std::string action_var;
  std::optional<std::string> decision_fn_var;
  Assignment evidence;
};

enum class Theory { kEdt, kCdt, kFdt };

std::string_view to_string(Theory theory);
std::optional<Theory> parse_theory(std::string_view text);

struct ActionValue {
  std::string action;
  double expected_utility = 0.0;
};

struct EvaluationReport {
  Theory theory = Theory::kEdt;
  std::vector<ActionValue> values;  // one per action, in domain order
  std::string chosen;
  // What an agent whose decision function reliably outputs `chosen` expects
  // to receive, i.e. the FDT valuation of the chosen action. Present only
  // when the problem has a decision-function variable. This is the figure to
  // compare across theories: CDT two-boxing in Newcomb is worth 11,000 here
  // whatever CDT's own EU table says.
  std::optional<double> policy_value;

  double value_of(std::string_view action) const;
};

struct Diagnostic {
  enum class Kind {
    kEmptyDomain,
    kDuplicateLabel,
    kDuplicateVariable,
    kMissingCpt,
    kDuplicateCpt,
    kDanglingReference,
    kCycle,
    kMissingRow,
    kExtraRow,
    kRowLength,
    kEntryOutOfRange,
    kRowNotNormalized,
    kUtilityShape,
    kBadProblem,
  };
  Kind kind;
  std::string message;
};

std::string_view to_string(Diagnostic::Kind kind);

class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when the evidence (including a conditioned-on action) has
// probability zero under the model being queried.
class ZeroProbabilityEvidence : public ModelError {
 public:
  explicit ZeroProbabilityEvidence(const Assignment& evidence);
  const Assignment& evidence() const noexcept { return evidence_; }

 private:
  Assignment evidence_;
};

inline constexpr double kRowSumTolerance = 1e-9;

// Empty iff the model is well formed. Never throws.
std::vector<Diagnostic> validate_model(const CausalModel& model);

// Model diagnostics plus the problem-level ones: the action variable exists,
// the decision-function variable (if any) has the action's domain and is a
// parent of the action, and the evidence names real variables and labels.
std::vector<Diagnostic> validate_problem(const DecisionProblem& problem);

// Posterior over `query` given `evidence`. Throws ModelError on an invalid
// model or unknown names, ZeroProbabilityEvidence if P(evidence) = 0.
std::vector<double> infer(const CausalModel& model, const Assignment& evidence,
                          std::string_view query);

// E[U | evidence].
double expected_utility(const CausalModel& model, const Assignment& evidence);

// do(var = value): `var` loses its parents and becomes a point mass.
CausalModel intervene(const CausalModel& model, std::string_view var,
                      std::string_view value);

// do(decision_fn = value), with `action` rewired to copy the decision
// function and nothing else. Other children of decision_fn keep their tables.
CausalModel intervene_decision_function(const CausalModel& model,
                                        std::string_view decision_fn,
                                        std::string_view action,
                                        std::string_view value);

double evaluate_edt(const DecisionProblem& problem, std::string_view action);
double evaluate_cdt(const DecisionProblem& problem, std::string_view action);
double evaluate_fdt(const DecisionProblem& problem, std::string_view action);
double evaluate(const DecisionProblem& problem, Theory theory,
                std::string_view action);

// Scores every action and picks the argmax. Ties go to the action listed
// first in the domain; two values count as tied when they differ by less
// than 1e-12 relative, so that a tie does not hinge on summation order.
EvaluationReport decide(const DecisionProblem& problem, Theory theory);

}  // namespace fdtsim::graphs

#endif  // FDTSIM_GRAPHS_HPP_
