#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace jetflow {

// Universal-constant slots. The source text never assigns numbers to these;
// they default to 1 and can be overridden from the config ("empirical" mode
// back-fills them from measured verifier ratios).
struct UniversalConstants {
  double K = 1.0, K_tilde = 1.0, K_hat = 1.0, K_star = 1.0, K_prime = 1.0, K_dprime = 1.0;
  double S = 1.0, S_tilde = 1.0, S_hat = 1.0;
  double M_over_4L = 1.0; // M / (4 |Lambda|)
  double M0 = 1.0;
};

struct ConstraintRow {
  std::string id;
  double log_margin = 0.0; // log(RHS) - log(LHS) in natural-log units; >= 0 passes
  bool pass = false;
  std::string note;
};

// Full parameter tuple of the frequency schedule, evaluated in log domain so
// that lambda_q = a^(b^q) is exact for q <= 10 without overflow. b^q is an
// exact big integer; logs are carried at 50 significant digits.
class ParamSchedule {
public:
  ParamSchedule(std::int64_t a, std::int64_t b, double alpha, double beta, double iota, double L,
                double e_bar, double e_tilde, double e_under, UniversalConstants uc = {});

  // a = 10^log10_a exactly; the admissible region forces log a ~ 1e8, far
  // beyond any literal integer, and every constraint consumes a only through
  // its logarithm while b^q stays an exact big integer
  static ParamSchedule pow10(std::int64_t log10_a, std::int64_t b, double alpha, double beta,
                             double iota, double L, double e_bar, double e_tilde, double e_under,
                             UniversalConstants uc = {});

  std::int64_t a() const { return a_; }
  std::int64_t b() const { return b_; }
  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  double iota() const { return iota_; }
  double m() const; // exp(4)

  // natural logs of the derived quantities at level q
  double log_lambda(int q) const;
  double log_delta(int q) const;
  double log_ell(int q) const;    // ell for the step q -> q+1
  double log_r_perp(int q) const; // of level q+1 jets
  double log_r_par(int q) const;
  double log_mu(int q) const;

  // every admissibility constraint, evaluated for q = 0..q_max
  std::vector<ConstraintRow> check_admissible(int q_max) const;
  bool all_pass(int q_max) const;

private:
  std::int64_t a_, b_;
  std::int64_t log10_a_ = 0; // nonzero means a = 10^log10_a
  double alpha_, beta_, iota_, L_, e_bar_, e_tilde_, e_under_;
  UniversalConstants uc_;
  double log_a() const;
};

// Desk-scale stand-in: lambda_q = lambda0 * ratio^q, each a 7th power of an
// integer so that r_perp * lambda stays an integer. The admissibility list
// above is NOT asserted for surrogates.
struct SurrogateSchedule {
  std::vector<std::int64_t> k;      // lambda_q = k_q^7
  std::vector<double> lambda;
  std::vector<double> delta;        // delta_q = (lambda_1 / lambda_q)^{2 beta}
  double beta = 0.0;
  double alpha = 0.0;               // used by the ell formula
  // ell for step q -> q+1 with the same formula shape
  double ell(int q) const;
  double r_perp(int q) const;       // of level q+1 jets
  double r_par(int q) const;
  double mu(int q) const;
  std::int64_t big_r(int q) const { return k.at(q + 1); }
};

SurrogateSchedule make_surrogate(std::int64_t k0, std::int64_t ratio_k, int levels, double beta,
                                 double alpha);

} // namespace jetflow
