#pragma once

#include "srslab/numkit/network.hpp"

namespace srslab::numkit {

enum class OptimizerKind { sgd, adam };

struct OptimizerState {
    OptimizerKind kind = OptimizerKind::adam;
    double learning_rate = 1e-3;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;
    long step_count = 0;
    // adam moment accumulators, lazily shaped on first step
    std::vector<LayerGrads> m;
    std::vector<LayerGrads> v;
};

OptimizerState make_sgd(double learning_rate);
OptimizerState make_adam(double learning_rate = 1e-3, double beta1 = 0.9, double beta2 = 0.999,
                         double epsilon = 1e-8);

// One in-place update. Non-finite gradient entries reject the update
// (params untouched) and raise NumericsError for the harness to surface.
void optimizer_step(NetworkParams& params, const ParamGrads& grads, OptimizerState& state);

}  // namespace srslab::numkit
