#include "oracles.hpp"

#include <algorithm>
#include <cmath>

namespace oracle {

Payoffs pd_payoffs(double cc, double cd, double dc, double dd) {
  return {{{cc, cd}, {dc, dd}}};
}

double twin_eu(const Payoffs& u, double rho, int my_move) {
  double eu = 0.0;
  for (int twin = 0; twin < 2; ++twin) {
    const double prob = twin == my_move ? rho : 1.0 - rho;
    eu += prob * u[my_move][twin];
  }
  return eu;
}

double twin_threshold_by_sweep(const Payoffs& u, double step) {
  const auto steps = static_cast<int>(std::lround(1.0 / step));
  for (int i = 0; i <= steps; ++i) {
    const double rho = i * step;
    if (twin_eu(u, rho, 0) >= twin_eu(u, rho, 1) - 1e-12) return rho;
  }
  return 2.0;
}

double signal_prob(int signal, int type, double p) {
  return signal == type ? p : (1.0 - p) / 2.0;
}

double pd_component_eu(const Payoffs& u, double p, const std::array<double, 3>& shares,
                       Policy policy, int signal, int move) {
  policy[signal] = move;
  double joint = 0.0;
  double weighted = 0.0;
  for (int t = 0; t < 3; ++t) {
    const double pt = shares[t] * signal_prob(signal, t, p);
    joint += pt;
    for (int r = 0; r < 3; ++r) {
      // r: the opponent's signal about us; we are FDT.
      const double pr = signal_prob(r, 2, p);
      const int theirs = t == 0 ? 1 : t == 1 ? 0 : policy[r];
      weighted += pt * pr * u[move][theirs];
    }
  }
  return joint > 0.0 ? weighted / joint : 0.0;
}

std::array<double, 3> pd_type_eus(const Payoffs& u, double p, const std::array<double, 3>& shares,
                                  const Policy& policy) {
  std::array<double, 3> out{};
  for (int me = 0; me < 3; ++me) {
    for (int them = 0; them < 3; ++them) {
      for (int s1 = 0; s1 < 3; ++s1) {      // my signal about them
        for (int s2 = 0; s2 < 3; ++s2) {    // their signal about me
          const double prob = shares[them] * signal_prob(s1, them, p) * signal_prob(s2, me, p);
          const int mine = me == 0 ? 1 : me == 1 ? 0 : policy[s1];
          const int theirs = them == 0 ? 1 : them == 1 ? 0 : policy[s2];
          out[me] += prob * u[mine][theirs];
        }
      }
    }
  }
  return out;
}

std::vector<Policy> pd_fixed_points(const Payoffs& u, double p,
                                    const std::array<double, 3>& shares) {
  std::vector<Policy> out;
  for (int a = 1; a >= 0; --a) {
    for (int b = 1; b >= 0; --b) {
      for (int c = 1; c >= 0; --c) {
        const Policy pol = {a, b, c};
        bool ok = true;
        for (int s = 0; s < 3 && ok; ++s) {
          const double keep = pd_component_eu(u, p, shares, pol, s, pol[s]);
          const double flip = pd_component_eu(u, p, shares, pol, s, 1 - pol[s]);
          const double scale = std::max({1.0, std::abs(keep), std::abs(flip)});
          ok = keep >= flip - 1e-12 * scale;
        }
        if (ok) out.push_back(pol);
      }
    }
  }
  return out;
}

Policy pd_best_fixed_point(const Payoffs& u, double p, const std::array<double, 3>& shares) {
  const auto candidates = pd_fixed_points(u, p, shares);
  Policy best = {-1, -1, -1};
  double best_value = -1e300;
  for (const auto& pol : candidates) {
    const double v = pd_type_eus(u, p, shares, pol)[2];
    if (v > best_value + 1e-12 * std::max(1.0, std::abs(v))) {
      best = pol;
      best_value = v;
    }
  }
  return best;
}

std::array<double, 2> beauty_guesses(const std::array<double, 3>& shares, double f, double mean) {
  const double r = shares[0];
  const double c = shares[1];
  const double d = shares[2];
  if (r + d == 0.0) {
    const double fdt = f * (r * mean) / (1.0 - f * d);
    return {0.0, fdt};
  }
  // (r + d) C - f d F = f r m
  // -f c C + (1 - f d) F = f r m
  const double a11 = r + d, a12 = -f * d, b1 = f * r * mean;
  const double a21 = -f * c, a22 = 1.0 - f * d, b2 = f * r * mean;
  const double det = a11 * a22 - a12 * a21;
  return {(b1 * a22 - a12 * b2) / det, (a11 * b2 - b1 * a21) / det};
}

}  // namespace oracle
