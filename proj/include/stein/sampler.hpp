#pragma once

// Exact samplers on S^{d-1}. Each takes an Rng and consumes only that
// stream, so parallel callers with distinct streams are independent and
// reproducible.

#include <cstddef>

#include "stein/models.hpp"
#include "stein/rng.hpp"
#include "stein/sample.hpp"

namespace stein {

/// Rejection windows: a sampler gives up when, after at least this many
/// proposals, the acceptance rate is below its floor.
inline constexpr std::size_t kAcceptanceWindow = 1000000;
inline constexpr double kWatsonAcceptanceFloor = 1e-4;
inline constexpr double kFbAcceptanceFloor = 1e-6;

/// Normalized standard Gaussian vectors.
SampleMatrix sample_uniform(int d, std::size_t n, Rng& rng);

/// Wood's rejection scheme for the e1 component, then reflection onto μ.
SampleMatrix sample_vmf(const VmfParams& p, std::size_t n, Rng& rng);

/// Density proportional to exp(xᵀBx), B symmetric. Angular central Gaussian
/// envelope (Kent, Ganeiber and Mardia); acceptance stays bounded away from
/// zero for any B.
SampleMatrix sample_bingham(const Matrix& b, std::size_t n, Rng& rng,
                            double acceptance_floor = kWatsonAcceptanceFloor);

/// Bingham with B = κμμᵀ; κ = 0 is uniform.
SampleMatrix sample_watson(const WatsonParams& p, std::size_t n, Rng& rng);

/// exp(μᵀx + xᵀAx). Two-stage rejection: μᵀx <= (‖μ‖/2)(1 + (μ̂ᵀx)²) on
/// the sphere, so Bingham(A + (‖μ‖/2) μ̂μ̂ᵀ) proposals are accepted with
/// probability exp(-(‖μ‖/2)(1 - μ̂ᵀx)²).
SampleMatrix sample_fb(const FisherBinghamParams& p, std::size_t n, Rng& rng);

/// Dispatch on the family.
SampleMatrix sample(const Params& p, std::size_t n, Rng& rng);

}  // namespace stein
