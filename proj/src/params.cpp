#include "jetflow/params.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <stdexcept>

namespace jetflow {

using big_int = boost::multiprecision::cpp_int;
using big_float = boost::multiprecision::cpp_bin_float_50;

namespace {

big_float pow_int(std::int64_t base, int exp) {
  big_int r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return big_float(r);
}

double to_d(const big_float& x) { return static_cast<double>(x); }

// log(e^x + e^y) evaluated stably in the log domain
big_float log_add(const big_float& x, const big_float& y) {
  const big_float hi = x > y ? x : y;
  const big_float lo = x > y ? y : x;
  return hi + boost::multiprecision::log1p(boost::multiprecision::exp(lo - hi));
}

} // namespace

ParamSchedule::ParamSchedule(std::int64_t a, std::int64_t b, double alpha, double beta, double iota,
                             double L, double e_bar, double e_tilde, double e_under,
                             UniversalConstants uc)
    : a_(a), b_(b), alpha_(alpha), beta_(beta), iota_(iota), L_(L), e_bar_(e_bar),
      e_tilde_(e_tilde), e_under_(e_under), uc_(uc) {
  if (b_ <= 0 || b_ % 7 != 0) throw std::domain_error("ParamSchedule: b must be a positive multiple of 7");
  if (a_ < 2) throw std::domain_error("ParamSchedule: a >= 2 required");
  if (!(alpha_ > 0 && alpha_ < 1) || !(beta_ > 0 && beta_ < 1))
    throw std::domain_error("ParamSchedule: alpha, beta in (0,1)");
  if (!(iota_ > 1.0 / 3.0 && iota_ < 0.5)) throw std::domain_error("ParamSchedule: iota in (1/3,1/2)");
  if (!(e_under_ > 4.0 && e_bar_ >= e_under_)) throw std::domain_error("ParamSchedule: need 4 < e_under <= e_bar");
}

ParamSchedule ParamSchedule::pow10(std::int64_t log10_a, std::int64_t b, double alpha, double beta,
                                   double iota, double L, double e_bar, double e_tilde,
                                   double e_under, UniversalConstants uc) {
  ParamSchedule p(3600, b, alpha, beta, iota, L, e_bar, e_tilde, e_under, uc);
  if (log10_a < 4) throw std::domain_error("ParamSchedule::pow10: a below 3600");
  p.a_ = 0;
  p.log10_a_ = log10_a;
  return p;
}

double ParamSchedule::log_a() const {
  return log10_a_ > 0 ? static_cast<double>(log10_a_) * std::log(10.0)
                      : std::log(static_cast<double>(a_));
}

double ParamSchedule::m() const { return std::exp(4.0); }

double ParamSchedule::log_lambda(int q) const {
  return to_d(pow_int(b_, q) * big_float(log_a()));
}

double ParamSchedule::log_delta(int q) const {
  return 2.0 * beta_ * (log_lambda(1) - log_lambda(q));
}

double ParamSchedule::log_ell(int q) const {
  return -(1.5 * alpha_) * log_lambda(q + 1) - 2.0 * log_lambda(q);
}

double ParamSchedule::log_r_perp(int q) const { return -(6.0 / 7.0) * log_lambda(q + 1); }
double ParamSchedule::log_r_par(int q) const { return -(4.0 / 7.0) * log_lambda(q + 1); }
double ParamSchedule::log_mu(int q) const { return (9.0 / 7.0) * log_lambda(q + 1); }

std::vector<ConstraintRow> ParamSchedule::check_admissible(int q_max) const {
  std::vector<ConstraintRow> rows;
  const big_float la = big_float(log_a());
  const big_float lnm = 4.0; // log exp(4)
  auto add = [&](const std::string& id, const big_float& log_lhs, const big_float& log_rhs,
                 const std::string& note = "") {
    ConstraintRow r;
    r.id = id;
    r.log_margin = to_d(log_rhs - log_lhs);
    r.pass = r.log_margin >= 0.0;
    r.note = note;
    rows.push_back(r);
  };

  // prerequisite list (q independent); plain-number comparisons still go
  // through logs for a uniform margin unit
  add("161*alpha < 1/7", big_float(std::log(161.0 * alpha_)), big_float(std::log(1.0 / 7.0)));
  add("alpha*iota > 4*beta*b^2", boost::multiprecision::log(4.0 * big_float(beta_) * b_ * b_),
      big_float(std::log(alpha_ * iota_)), "strict inequality, margin sign flipped accordingly");
  add("alpha*b >= 10/iota - 4", big_float(std::log(10.0 / iota_ - 4.0)),
      big_float(std::log(alpha_ * static_cast<double>(b_))));
  add("a >= 3600", big_float(std::log(3600.0)), la);
  add("a^(beta*b) >= 2", big_float(std::log(2.0)), big_float(beta_) * b_ * la);
  add("a^(3*alpha*b/2+2) >= m^2*e_bar", lnm * 2 + big_float(std::log(e_bar_)),
      (big_float(1.5) * alpha_ * b_ + 2) * la);
  // geometric-series bound: 1/(1-a^{-beta b}) <= 2
  {
    const double abb = to_d(boost::multiprecision::exp(-big_float(beta_) * b_ * la));
    ConstraintRow r;
    r.id = "sum delta_r^(1/2) <= 2";
    const double bound = 1.0 / (1.0 - abb);
    r.log_margin = std::log(2.0) - std::log(bound);
    r.pass = r.log_margin >= 0.0;
    rows.push_back(r);
  }

  for (int q = 0; q <= q_max; ++q) {
    const big_float lamq = pow_int(b_, q) * la;
    const big_float lamq1 = pow_int(b_, q + 1) * la;
    const big_float lell = -big_float(1.5) * alpha_ * lamq1 - 2 * lamq;
    const std::string tag = "[q=" + std::to_string(q) + "] ";

    // delta_q in (0,1) for q >= 2
    if (q >= 2) {
      const big_float ldelta = 2 * big_float(beta_) * (pow_int(b_, 1) * la - pow_int(b_, q) * la);
      add(tag + "delta_q < 1", ldelta, big_float(0.0));
    }
    add(tag + "ell < 1", lell, big_float(0.0));
    add(tag + "(3.1a) ell*lam_q^(5/iota) <= lam_{q+1}^(-alpha)", lell + (5.0 / iota_) * lamq,
        -big_float(alpha_) * lamq1);
    add(tag + "(3.1b) m^2*e_bar <= 1/ell", 2 * lnm + big_float(std::log(e_bar_)), -lell);
    add(tag + "(3.1b) 1/ell <= lam_{q+1}^(2alpha)", -lell, 2 * big_float(alpha_) * lamq1);

    // the q >= q_0 list; constants are the configured slots
    const double M4 = uc_.M_over_4L;
    add(tag + "10*M0*e_bar*lam^(2bb^2-a/2) <= 1",
        big_float(std::log(10.0 * uc_.M0 * e_bar_)) +
            (2 * big_float(beta_) * b_ * b_ - big_float(alpha_) / 2) * lamq1,
        big_float(0.0));
    add(tag + "(M/4L)*lam^(33a-1/7) <= 1",
        big_float(std::log(M4)) + (33 * big_float(alpha_) - big_float(1) / 7) * lamq1, big_float(0.0));
    add(tag + "33(2pi)^1.5*M0*m^2.25*(e+e~)*lam^(-a(3i/2-1/2)) <= 1/(1500 m^0.5)",
        big_float(std::log(33.0 * std::pow(2 * M_PI, 1.5) * uc_.M0 * (e_bar_ + e_tilde_))) +
            big_float(2.25) * lnm - big_float(alpha_) * (1.5 * iota_ - 0.5) * lamq1,
        -big_float(std::log(1500.0)) - big_float(0.5) * lnm);
    add(tag + "S*(M/4L + (M/4L)^2)*lam^(-100a) <= 1/(1500 m^0.5)",
        big_float(std::log(uc_.S * (M4 + M4 * M4))) - 100 * big_float(alpha_) * lamq1,
        -big_float(std::log(1500.0)) - big_float(0.5) * lnm);
    add(tag + "3*S~*max_n (M/4L)^n*lam^(-68a) <= 1/(1500 m^0.5)",
        big_float(std::log(3.0 * uc_.S_tilde *
                           std::max({std::pow(M4, 2), std::pow(M4, 3), std::pow(M4, 4)}))) -
            68 * big_float(alpha_) * lamq1,
        -big_float(std::log(1500.0)) - big_float(0.5) * lnm);
    add(tag + "S^*(M/4L)^2*lam^(-111a) <= 1/(1500 m^0.5)",
        big_float(std::log(uc_.S_hat * M4 * M4)) - 111 * big_float(alpha_) * lamq1,
        -big_float(std::log(1500.0)) - big_float(0.5) * lnm);
    // 2K(M/4L)lam^{-12/7} + K(M/4L)^2 lam^{-6/7} <= 1/2
    {
      const big_float t1 = big_float(std::log(2.0 * uc_.K * M4)) - big_float(12) / 7 * lamq1;
      const big_float t2 = big_float(std::log(uc_.K * M4 * M4)) - big_float(6) / 7 * lamq1;
      add(tag + "2K(M/4L)lam^(-12/7)+K(M/4L)^2 lam^(-6/7) <= 1/2", log_add(t1, t2),
          big_float(std::log(0.5)));
    }
    add(tag + "K~*lam_q^5*lam_{q+1}^(-5) <= 1/2",
        big_float(std::log(uc_.K_tilde)) + 5 * lamq - 5 * lamq1, big_float(std::log(0.5)));
    add(tag + "K^*lam^(-147a) <= 1/(80 m^0.75)",
        big_float(std::log(uc_.K_hat)) - 147 * big_float(alpha_) * lamq1,
        -big_float(std::log(80.0)) - big_float(0.75) * lnm);
    add(tag + "K*2pi(M/4L)lam^(-5/21) <= 1/(5 m^0.5)",
        big_float(std::log(uc_.K_star * 2 * M_PI * M4)) - big_float(5) / 21 * lamq1,
        -big_float(std::log(5.0)) - big_float(0.5) * lnm);
    add(tag + "K'(M0+M/4L)^3*lam^(-1/14) <= 1/(5 m^0.5)",
        big_float(std::log(uc_.K_prime * std::pow(uc_.M0 + M4, 3))) - big_float(1) / 14 * lamq1,
        -big_float(std::log(5.0)) - big_float(0.5) * lnm);
    add(tag + "K''((M/4L)^2+(M/4L)^4)*lam^(-1/7) <= 1/(5 m^0.5)",
        big_float(std::log(uc_.K_dprime * (std::pow(M4, 2) + std::pow(M4, 4)))) -
            big_float(1) / 7 * lamq1,
        -big_float(std::log(5.0)) - big_float(0.5) * lnm);
  }
  return rows;
}

bool ParamSchedule::all_pass(int q_max) const {
  for (const auto& r : check_admissible(q_max))
    if (!r.pass) return false;
  return true;
}

double SurrogateSchedule::ell(int q) const {
  return std::pow(lambda.at(q + 1), -1.5 * alpha) / (lambda.at(q) * lambda.at(q));
}
double SurrogateSchedule::r_perp(int q) const { return std::pow(lambda.at(q + 1), -6.0 / 7.0); }
double SurrogateSchedule::r_par(int q) const { return std::pow(lambda.at(q + 1), -4.0 / 7.0); }
double SurrogateSchedule::mu(int q) const { return std::pow(lambda.at(q + 1), 9.0 / 7.0); }

SurrogateSchedule make_surrogate(std::int64_t k0, std::int64_t ratio_k, int levels, double beta,
                                 double alpha) {
  if (k0 < 2 || ratio_k < 2) throw std::domain_error("make_surrogate: k0, ratio_k >= 2");
  SurrogateSchedule s;
  s.beta = beta;
  s.alpha = alpha;
  std::int64_t k = k0;
  for (int q = 0; q <= levels; ++q) {
    // every lambda_q must be the 7th power of an integer
    s.k.push_back(k);
    s.lambda.push_back(std::pow(static_cast<double>(k), 7.0));
    k *= ratio_k;
  }
  for (int q = 0; q <= levels; ++q)
    s.delta.push_back(std::pow(s.lambda[1] / s.lambda[q], 2.0 * beta));
  return s;
}

} // namespace jetflow
