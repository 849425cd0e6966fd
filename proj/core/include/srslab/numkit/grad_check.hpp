#pragma once

#include <functional>

#include "srslab/numkit/network.hpp"

namespace srslab::numkit {

// Scalar loss of the network output, with its gradient w.r.t. the output.
struct ScalarLoss {
    std::function<double(const Eigen::VectorXd&)> value;
    std::function<Eigen::VectorXd(const Eigen::VectorXd&)> grad;
};

// Central-difference gradient of loss(forward(net, probe)) w.r.t. every
// parameter. Lives beside grad_check so fault-injection tests can compare
// against deliberately corrupted analytic gradients.
ParamGrads finite_difference_grads(const NetworkParams& net, const ScalarLoss& loss,
                                   const Eigen::VectorXd& probe, double h);

// max over parameters of |a - b| / max(1e-8, |a| + |b|)
double max_relative_error(const ParamGrads& a, const ParamGrads& b);

// Verifies the analytic backward pass against central finite differences.
// Returns the max relative error over all parameters (0 for degenerate nets).
double grad_check(const NetworkParams& net, const ScalarLoss& loss, const Eigen::VectorXd& probe,
                  double h);

}  // namespace srslab::numkit
