#pragma once

#include <schrodnet/measurement.hpp>
#include <schrodnet/netops.hpp>

#include <stdexcept>

namespace schrodnet {

/// Raised when the network inverse problem cannot be solved with
/// positive conductances: the "negative conductor" signal consumed by
/// the noise-adaptive lumping logic.
struct RecoveryError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RecoveryOptions {
  double tol = 1e-12;   // relative DtN residual
  int max_iter = 4000;
  double log_bound = 40.0;  // |log gamma| beyond this counts as escape
};

/// Recover the unique conductivity of a critical network from its DtN
/// data: damped Gauss-Newton on log-conductances matching the strict upper
/// triangle of M. Throws RecoveryError on non-convergence or iterate
/// escape (the failure mode noisy data produces).
Conductivity recover_conductivity(const Network& g, const MeasurementMatrix& M,
                                  const RecoveryOptions& opts = {});

/// Derivative of the recovered conductivity with respect to the
/// independent DtN entries: the inverse of network_dtn_jacobian at gamma.
struct GammaJacobian {
  Matrix map;        // edges x upper-triangle entries
  double condition;  // condition estimate of the forward Jacobian
};

GammaJacobian gamma_jacobian(const Network& g, const Conductivity& gamma);

}  // namespace schrodnet
