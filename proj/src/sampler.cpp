#include "stein/sampler.hpp"

#include <cmath>
#include <string>

#include "stein/errors.hpp"

namespace stein {
namespace {

void require_n(std::size_t n) {
  if (n < 1) throw DomainError("sampler: n must be at least 1");
}

// Counts proposals and enforces the acceptance floor.
class AcceptanceMonitor {
 public:
  AcceptanceMonitor(double floor, const char* what) : floor_(floor), what_(what) {}

  void proposed() { ++proposals_; }
  void accepted() {
    ++accepted_;
  }
  void check() const {
    if (proposals_ >= kAcceptanceWindow &&
        static_cast<double>(accepted_) < floor_ * static_cast<double>(proposals_))
      throw SamplerError(std::string(what_) + ": acceptance rate " +
                         std::to_string(static_cast<double>(accepted_) /
                                        static_cast<double>(proposals_)) +
                         " below floor after " + std::to_string(proposals_) + " proposals");
  }

 private:
  double floor_;
  const char* what_;
  std::size_t proposals_ = 0;
  std::size_t accepted_ = 0;
};

// Bingham exp(xᵀBx) sampler state: B = λmax I - A' with A' >= 0 diagonal in
// the eigenbasis of B.
struct BinghamEnvelope {
  int d;
  Matrix basis;        // eigenvectors of B
  Vector lambda;       // eigenvalues of A' (>= 0)
  Vector proposal_sd;  // sd of the Gaussian proposal along each eigenvector
  double b;
  double log_bound;
};

BinghamEnvelope make_envelope(const Matrix& bmat) {
  const EigenDecomposition eig = sym_eigen(bmat);
  const int d = static_cast<int>(bmat.rows());
  BinghamEnvelope env;
  env.d = d;
  env.basis = eig.vectors;
  env.lambda = (eig.values(0) - eig.values.array()).matrix();
  env.lambda(0) = 0.0;

  // b solves sum 1/(b + 2 λ_i) = 1 on (0, d]; the sum is decreasing in b and
  // diverges at 0 because λ_0 = 0.
  auto g = [&](double b) { return (1.0 / (b + 2.0 * env.lambda.array())).sum() - 1.0; };
  double lo = 0.0;
  double hi = static_cast<double>(d);
  if (g(hi) >= 0.0) {
    env.b = hi;
  } else {
    for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
      const double mid = 0.5 * (lo + hi);
      (g(mid) > 0.0 ? lo : hi) = mid;
    }
    env.b = hi;
  }
  env.proposal_sd = (1.0 / (1.0 + 2.0 * env.lambda.array() / env.b)).sqrt().matrix();
  env.log_bound = -0.5 * (d - env.b) + 0.5 * d * std::log(d / env.b);
  return env;
}

// One accepted draw from exp(-xᵀA'x) (equivalently exp(xᵀBx)).
Vector draw_bingham(const BinghamEnvelope& env, Rng& rng, AcceptanceMonitor& mon) {
  Vector z(env.d);
  for (;;) {
    mon.proposed();
    for (int i = 0; i < env.d; ++i) z(i) = env.proposal_sd(i) * rng.normal();
    const double nz = z.norm();
    if (nz == 0.0) continue;
    z /= nz;
    const double t = (env.lambda.array() * z.array().square()).sum();
    const double log_ratio = -t + 0.5 * env.d * std::log(1.0 + 2.0 * t / env.b) - env.log_bound;
    if (std::log(rng.uniform()) < log_ratio) {
      mon.accepted();
      return env.basis * z;
    }
    mon.check();
  }
}

// Unit vector uniform on S^{k-1}.
void fill_uniform(Eigen::Ref<Vector> v, Rng& rng) {
  double nv;
  do {
    for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = rng.normal();
    nv = v.norm();
  } while (nv == 0.0);
  v /= nv;
}

}  // namespace

SampleMatrix sample_uniform(int d, std::size_t n, Rng& rng) {
  if (d < 2) throw DomainError("sample_uniform: d must be at least 2");
  require_n(n);
  Matrix x(static_cast<Eigen::Index>(n), d);
  for (std::size_t i = 0; i < n; ++i)
    for (int j = 0; j < d; ++j) x(static_cast<Eigen::Index>(i), j) = rng.normal();
  return SampleMatrix::normalized(std::move(x));
}

SampleMatrix sample_vmf(const VmfParams& p, std::size_t n, Rng& rng) {
  validate(p);
  require_n(n);
  const int d = p.d();
  const double k = p.kappa;
  const double dm1 = d - 1.0;
  const double b = dm1 / (2.0 * k + std::sqrt(4.0 * k * k + dm1 * dm1));
  const double x0 = (1.0 - b) / (1.0 + b);
  const double c = k * x0 + dm1 * std::log(1.0 - x0 * x0);

  // Reflection taking e1 to μ: R = I - 2vvᵀ/vᵀv with v = e1 - μ (R is its
  // own inverse, so this is rotation_to_e1(μ)ᵀ).
  const Vector mu = p.mu / p.mu.norm();
  const Matrix r = rotation_to_e1(mu);

  Matrix out(static_cast<Eigen::Index>(n), d);
  Vector y(d);
  Vector tail(d - 1);
  for (std::size_t i = 0; i < n; ++i) {
    double w;
    for (;;) {
      const double z = rng.beta(0.5 * dm1, 0.5 * dm1);
      w = (1.0 - (1.0 + b) * z) / (1.0 - (1.0 - b) * z);
      const double u = rng.uniform();
      if (k * w + dm1 * std::log(1.0 - x0 * w) - c >= std::log(u)) break;
    }
    fill_uniform(tail, rng);
    y(0) = w;
    y.tail(d - 1) = std::sqrt(std::max(0.0, 1.0 - w * w)) * tail;
    out.row(static_cast<Eigen::Index>(i)) = (r * y).transpose();
  }
  return SampleMatrix::normalized(std::move(out));
}

SampleMatrix sample_bingham(const Matrix& b, std::size_t n, Rng& rng, double acceptance_floor) {
  require_symmetric(b, "sample_bingham");
  require_n(n);
  const BinghamEnvelope env = make_envelope(0.5 * (b + b.transpose()));
  AcceptanceMonitor mon(acceptance_floor, "sample_bingham");
  Matrix out(static_cast<Eigen::Index>(n), env.d);
  for (std::size_t i = 0; i < n; ++i)
    out.row(static_cast<Eigen::Index>(i)) = draw_bingham(env, rng, mon).transpose();
  return SampleMatrix::normalized(std::move(out));
}

SampleMatrix sample_watson(const WatsonParams& p, std::size_t n, Rng& rng) {
  validate(p);
  if (p.kappa == 0.0) return sample_uniform(p.d(), n, rng);
  const Vector mu = p.mu / p.mu.norm();
  return sample_bingham(p.kappa * mu * mu.transpose(), n, rng, kWatsonAcceptanceFloor);
}

SampleMatrix sample_fb(const FisherBinghamParams& p, std::size_t n, Rng& rng) {
  validate(p);
  require_n(n);
  const int d = p.d();
  const double norm_mu = p.mu.norm();
  if (norm_mu == 0.0) return sample_bingham(p.A, n, rng, kFbAcceptanceFloor);

  const Vector dir = p.mu / norm_mu;
  const double half = 0.5 * norm_mu;
  const Matrix bmat = p.A + half * dir * dir.transpose();
  const BinghamEnvelope env = make_envelope(0.5 * (bmat + bmat.transpose()));
  AcceptanceMonitor inner(kFbAcceptanceFloor, "sample_fb (Bingham stage)");
  AcceptanceMonitor outer(kFbAcceptanceFloor, "sample_fb");

  Matrix out(static_cast<Eigen::Index>(n), d);
  for (std::size_t i = 0; i < n; ++i) {
    for (;;) {
      outer.proposed();
      const Vector x = draw_bingham(env, rng, inner);
      const double gap = 1.0 - dir.dot(x);
      if (std::log(rng.uniform()) < -half * gap * gap) {
        outer.accepted();
        out.row(static_cast<Eigen::Index>(i)) = x.transpose();
        break;
      }
      outer.check();
    }
  }
  return SampleMatrix::normalized(std::move(out));
}

SampleMatrix sample(const Params& p, std::size_t n, Rng& rng) {
  switch (family_of(p)) {
    case Family::fb: return sample_fb(std::get<FisherBinghamParams>(p), n, rng);
    case Family::vmf: return sample_vmf(std::get<VmfParams>(p), n, rng);
    case Family::watson: return sample_watson(std::get<WatsonParams>(p), n, rng);
  }
  throw DomainError("sample: unknown family");
}

}  // namespace stein
