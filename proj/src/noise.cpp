#include "jetflow/noise.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <random>
#include <sstream>
#include <stdexcept>

#include "jetflow/grid.hpp"

namespace jetflow {

namespace {

double phi_raw(double t) {
  if (t <= 0.0 || t >= 1.0) return 0.0;
  const double d = (t - 0.5) * (t - 0.5) - 0.25;
  return std::exp(1.0 / d);
}

double phi_raw_deriv(double t) {
  if (t <= 0.0 || t >= 1.0) return 0.0;
  const double d = (t - 0.5) * (t - 0.5) - 0.25;
  return phi_raw(t) * (-2.0 * (t - 0.5) / (d * d));
}

// normalization by iterated Simpson refinement until 1e-12 stable
double phi_normalization() {
  static const double c = [] {
    double prev = 0.0;
    for (int n = 64; n <= 1 << 20; n *= 2) {
      double s = 0.0;
      const double h = 1.0 / n;
      for (int i = 0; i < n; ++i) {
        const double a = i * h;
        s += (h / 6.0) * (phi_raw(a) + 4.0 * phi_raw(a + 0.5 * h) + phi_raw(a + h));
      }
      if (n > 64 && std::abs(s - prev) < 1e-12 * s) return 1.0 / s;
      prev = s;
    }
    return 1.0 / prev;
  }();
  return c;
}

} // namespace

double time_mollifier(double t) { return phi_normalization() * phi_raw(t); }
double time_mollifier_deriv(double t) { return phi_normalization() * phi_raw_deriv(t); }

double mollify_time(const std::function<double(double)>& f, double t, double ell, int sub) {
  if (ell <= 0.0) throw std::domain_error("mollify_time: ell must be positive");
  if (sub < 64) sub = 64;
  // integral over s in [0, ell] of f(t-s) phi(s/ell)/ell ds, Simpson
  double acc = 0.0;
  const double h = ell / sub;
  for (int i = 0; i < sub; ++i) {
    const double a = i * h;
    auto g = [&](double s) { return f(t - s) * time_mollifier(s / ell) / ell; };
    acc += (h / 6.0) * (g(a) + 4.0 * g(a + 0.5 * h) + g(a + h));
  }
  return acc;
}

double mollify_time_deriv(const std::function<double(double)>& f, double t, double ell, int sub) {
  if (ell <= 0.0) throw std::domain_error("mollify_time_deriv: ell must be positive");
  if (sub < 64) sub = 64;
  double acc = 0.0;
  const double h = ell / sub;
  for (int i = 0; i < sub; ++i) {
    const double a = i * h;
    auto g = [&](double s) { return f(t - s) * time_mollifier_deriv(s / ell) / (ell * ell); };
    acc += (h / 6.0) * (g(a) + 4.0 * g(a + 0.5 * h) + g(a + h));
  }
  return acc;
}

NoisePath NoisePath::sample(std::uint64_t seed, double dt, double horizon) {
  if (dt <= 0.0 || horizon <= 0.0) throw std::domain_error("NoisePath: dt and horizon must be positive");
  if (dt >= horizon) throw std::domain_error("NoisePath: dt must be smaller than the horizon");
  NoisePath p;
  p.seed_ = seed;
  p.dt_ = dt;
  p.horizon_ = horizon;
  const std::size_t k = static_cast<std::size_t>(std::ceil(horizon / dt));
  p.b_.resize(k + 1, 0.0);
  std::mt19937_64 rng(seed);
  const double sd = std::sqrt(dt);
  for (std::size_t i = 1; i <= k; ++i) {
    double u1 = 0.0;
    do { u1 = std::uniform_real_distribution<double>(0.0, 1.0)(rng); } while (u1 <= 1e-300);
    const double u2 = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    const double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
    p.b_[i] = p.b_[i - 1] + sd * z;
  }
  return p;
}

double NoisePath::b(double t) const {
  if (t <= 0.0) return 0.0;
  const double u = t / dt_;
  const std::size_t k = static_cast<std::size_t>(u);
  if (k >= b_.size() - 1) return b_.back();
  const double w = u - static_cast<double>(k);
  return (1.0 - w) * b_[k] + w * b_[k + 1];
}

double NoisePath::theta_mollified(double t, double ell) const {
  return mollify_time([this](double s) { return theta(s); }, t, ell);
}

double NoisePath::theta_mollified_deriv(double t, double ell) const {
  return mollify_time_deriv([this](double s) { return theta(s); }, t, ell);
}

double NoisePath::hoelder_seminorm(double t, double iota) const {
  if (iota <= 1.0 / 3.0 || iota >= 0.5) throw std::domain_error("hoelder_seminorm: iota outside (1/3,1/2)");
  const std::size_t kmax = std::min<std::size_t>(b_.size() - 1, static_cast<std::size_t>(t / dt_));
  if (kmax < 1) return 0.0;
  double bmax = 0.0;
  for (std::size_t i = 0; i <= kmax; ++i) bmax = std::max(bmax, std::abs(b_[i]));
  double best = 0.0;
  // gaps in increasing order; once 2*bmax / (g*dt)^iota can no longer beat
  // the current best, all larger gaps are skipped
  for (std::size_t g = 1; g <= kmax; ++g) {
    const double denom = std::pow(g * dt_, iota);
    if (2.0 * bmax / denom <= best) break;
    for (std::size_t i = 0; i + g <= kmax; ++i)
      best = std::max(best, std::abs(b_[i + g] - b_[i]) / denom);
  }
  return best;
}

StoppingTime NoisePath::stopping_time(double level, double iota) const {
  StoppingTime st;
  st.tau = std::min(level, horizon_);
  st.triggered_by = StopTrigger::horizon;
  const std::size_t k = b_.size() - 1;
  for (std::size_t i = 1; i <= k; ++i) {
    const double t = i * dt_;
    if (t > st.tau) break;
    if (std::abs(b_[i]) >= level) {
      st.tau = t;
      st.triggered_by = StopTrigger::amplitude;
      break;
    }
    if (hoelder_seminorm(t, iota) >= level) {
      st.tau = t;
      st.triggered_by = StopTrigger::hoelder;
      break;
    }
  }
  return st;
}

NoisePath NoisePath::spliced_after(double t0, const NoisePath& other) const {
  if (other.dt_ != dt_ || other.b_.size() != b_.size())
    throw std::invalid_argument("spliced_after: incompatible paths");
  NoisePath p = *this;
  const std::size_t k0 = static_cast<std::size_t>(std::floor(t0 / dt_));
  for (std::size_t i = k0 + 1; i < b_.size(); ++i) {
    const double inc = other.b_[i] - other.b_[i - 1];
    p.b_[i] = p.b_[i - 1] + inc;
  }
  return p;
}

void NoisePath::write_csv(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("NoisePath: cannot open " + path);
  out << "# seed=" << seed_ << " dt=" << std::setprecision(17) << dt_ << " horizon=" << horizon_ << "\n";
  out << "t,B,Theta\n";
  out << std::setprecision(17);
  for (std::size_t i = 0; i < b_.size(); ++i) {
    const double t = i * dt_;
    out << t << "," << b_[i] << "," << std::exp(b_[i]) << "\n";
  }
}

NoisePath NoisePath::read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("NoisePath: cannot open " + path);
  NoisePath p;
  std::string line;
  std::getline(in, line);
  if (line.rfind("# seed=", 0) == 0) {
    std::istringstream hdr(line.substr(2));
    std::string tok;
    while (hdr >> tok) {
      const auto eq = tok.find('=');
      if (eq == std::string::npos) continue;
      const std::string key = tok.substr(0, eq);
      const std::string val = tok.substr(eq + 1);
      if (key == "seed") p.seed_ = std::stoull(val);
      if (key == "dt") p.dt_ = std::stod(val);
      if (key == "horizon") p.horizon_ = std::stod(val);
    }
  }
  std::getline(in, line); // column header
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string t, bval;
    std::getline(row, t, ',');
    std::getline(row, bval, ',');
    p.b_.push_back(std::stod(bval));
  }
  if (p.b_.size() < 2) throw std::runtime_error("NoisePath: too few samples in " + path);
  return p;
}

} // namespace jetflow
