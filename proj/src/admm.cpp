#include "matgraph/admm.hpp"

#include <stdexcept>

namespace matgraph {

void AdmmConfig::validate() const {
  if (!(rho0 > 0.0) || !(tau_abs > 0.0) || !(tau_rel > 0.0)) {
    throw std::invalid_argument("AdmmConfig: rho0, tau_abs and tau_rel must be positive");
  }
  if (!(mu_bar > 1.0)) throw std::invalid_argument("AdmmConfig: mu_bar must exceed 1");
  if (i_max < 1) throw std::invalid_argument("AdmmConfig: i_max must be at least 1");
}

RhoStep balance_rho(double primal, double dual, double mu_bar, double& rho) {
  if (primal > mu_bar * dual) {
    rho *= 2.0;
    return RhoStep::doubled;
  }
  if (dual > mu_bar * primal) {
    rho /= 2.0;
    return RhoStep::halved;
  }
  return RhoStep::keep;
}

}  // namespace matgraph
