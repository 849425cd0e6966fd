#pragma once

#include <vector>

#include <Eigen/Core>

#include "srslab/numkit/rng.hpp"

namespace srslab::numkit {

enum class Activation { identity, relu, tanh, sigmoid, softmax };

struct Layer {
    Eigen::MatrixXd weight;  // out x in
    Eigen::VectorXd bias;    // out
    Activation activation = Activation::identity;
};

// Fixed feed-forward topology. Layer k's output size must equal
// layer k+1's input size; all entries stay finite across updates.
struct NetworkParams {
    std::vector<Layer> layers;

    int input_size() const;
    int output_size() const;
    bool all_finite() const;
    void validate() const;  // throws ConfigError
};

struct LayerGrads {
    Eigen::MatrixXd weight;
    Eigen::VectorXd bias;
};

// Shape-congruent with the NetworkParams it was produced from.
struct ParamGrads {
    std::vector<LayerGrads> layers;

    bool all_finite() const;
    static ParamGrads zeros_like(const NetworkParams& net);
};

// Per-layer pre/post activations of one forward pass; column j belongs
// to input column j. Sufficient for dense_backward.
struct ForwardCache {
    Eigen::MatrixXd input;
    std::vector<Eigen::MatrixXd> pre;
    std::vector<Eigen::MatrixXd> post;
};

Eigen::VectorXd apply_activation(Activation act, const Eigen::VectorXd& z);

// Single-input forward pass.
Eigen::VectorXd dense_forward(const NetworkParams& net, const Eigen::VectorXd& x,
                              ForwardCache* cache = nullptr);

// Batched forward pass: one input per column of x.
Eigen::MatrixXd dense_forward_batch(const NetworkParams& net, const Eigen::MatrixXd& x,
                                    ForwardCache* cache = nullptr);

struct BackwardResult {
    ParamGrads grads;
    Eigen::MatrixXd input_grad;  // dLoss/dInput, one column per batch item
};

// Exact analytic gradients of the scalar loss whose output-gradient is
// supplied. Gradients are summed over batch columns.
BackwardResult dense_backward_batch(const NetworkParams& net, const ForwardCache& cache,
                                    const Eigen::MatrixXd& output_grad);

std::pair<ParamGrads, Eigen::VectorXd> dense_backward(const NetworkParams& net,
                                                      const ForwardCache& cache,
                                                      const Eigen::VectorXd& output_grad);

// Scaled uniform init: weights ~ U(+-sqrt(6/(fan_in+fan_out))), biases 0.
NetworkParams make_network(int input, const std::vector<int>& hidden, int output,
                           Activation hidden_act, Activation output_act, SeededRng& rng);

}  // namespace srslab::numkit
