#ifndef FDTSIM_BELIEFS_HPP_
#define FDTSIM_BELIEFS_HPP_

// Odds-form Bayesian updating on a noisy type signal. A signal names the
// sender's true type with probability `accuracy`; the remaining mass is spread
// evenly over the other types.

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace fdtsim::beliefs {

// Unnormalized, nonnegative weights over types.
using OddsVector = std::vector<double>;

struct SignalModel {
  double accuracy = 0.9;
  std::size_t type_count = 3;
};

class BeliefError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Throws BeliefError unless 0 <= accuracy <= 1 and type_count >= 2.
void validate(const SignalModel& model);

double signal_probability(std::size_t signal, std::size_t true_type, const SignalModel& model);

// Entry i is P(signal | type i). Throws BeliefError if signal >= type_count.
OddsVector likelihood(std::size_t signal, const SignalModel& model);

// Scales to sum 1. Throws BeliefError if empty, negative, or all zero.
std::vector<double> normalize(std::span<const double> odds);

// prior * likelihood(signal), normalized. `prior` may be any positive
// rescaling of the shares. Throws BeliefError when the product is all zero.
std::vector<double> posterior(std::span<const double> prior, std::size_t signal,
                              const SignalModel& model);

}  // namespace fdtsim::beliefs

#endif  // FDTSIM_BELIEFS_HPP_
