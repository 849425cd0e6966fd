#include "srslab/numkit/optimizer.hpp"

#include <cmath>

#include "srslab/errors.hpp"

namespace srslab::numkit {

OptimizerState make_sgd(double learning_rate) {
    OptimizerState s;
    s.kind = OptimizerKind::sgd;
    s.learning_rate = learning_rate;
    return s;
}

OptimizerState make_adam(double learning_rate, double beta1, double beta2, double epsilon) {
    OptimizerState s;
    s.kind = OptimizerKind::adam;
    s.learning_rate = learning_rate;
    s.beta1 = beta1;
    s.beta2 = beta2;
    s.epsilon = epsilon;
    return s;
}

void optimizer_step(NetworkParams& params, const ParamGrads& grads, OptimizerState& state) {
    if (grads.layers.size() != params.layers.size())
        throw ConfigError("optimizer_step: gradient/parameter layer count mismatch");
    for (size_t k = 0; k < params.layers.size(); ++k) {
        if (grads.layers[k].weight.rows() != params.layers[k].weight.rows() ||
            grads.layers[k].weight.cols() != params.layers[k].weight.cols() ||
            grads.layers[k].bias.size() != params.layers[k].bias.size())
            throw ConfigError("optimizer_step: gradient shape mismatch");
    }
    if (!grads.all_finite()) throw NumericsError("optimizer_step: non-finite gradient entries");

    state.step_count += 1;
    const double lr = state.learning_rate;

    if (state.kind == OptimizerKind::sgd) {
        for (size_t k = 0; k < params.layers.size(); ++k) {
            params.layers[k].weight -= lr * grads.layers[k].weight;
            params.layers[k].bias -= lr * grads.layers[k].bias;
        }
    } else {
        if (state.m.empty()) {
            NetworkParams shape;
            shape.layers = params.layers;
            state.m = ParamGrads::zeros_like(shape).layers;
            state.v = ParamGrads::zeros_like(shape).layers;
        }
        const double b1 = state.beta1;
        const double b2 = state.beta2;
        const double corr1 = 1.0 - std::pow(b1, static_cast<double>(state.step_count));
        const double corr2 = 1.0 - std::pow(b2, static_cast<double>(state.step_count));
        for (size_t k = 0; k < params.layers.size(); ++k) {
            auto& m = state.m[k];
            auto& v = state.v[k];
            const auto& g = grads.layers[k];
            m.weight = b1 * m.weight + (1.0 - b1) * g.weight;
            m.bias = b1 * m.bias + (1.0 - b1) * g.bias;
            v.weight = b2 * v.weight.array() + (1.0 - b2) * g.weight.array().square();
            v.bias = b2 * v.bias.array() + (1.0 - b2) * g.bias.array().square();
            params.layers[k].weight.array() -=
                lr * (m.weight.array() / corr1) / ((v.weight.array() / corr2).sqrt() + state.epsilon);
            params.layers[k].bias.array() -=
                lr * (m.bias.array() / corr1) / ((v.bias.array() / corr2).sqrt() + state.epsilon);
        }
    }

    if (!params.all_finite()) throw NumericsError("optimizer_step: parameters became non-finite");
}

}  // namespace srslab::numkit
