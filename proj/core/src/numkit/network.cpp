#include "srslab/numkit/network.hpp"

#include <cmath>

#include "srslab/errors.hpp"

namespace srslab::numkit {

namespace {

void activate_inplace(Activation act, Eigen::MatrixXd& z) {
    switch (act) {
        case Activation::identity:
            break;
        case Activation::relu:
            z = z.cwiseMax(0.0);
            break;
        case Activation::tanh:
            z = z.array().tanh();
            break;
        case Activation::sigmoid:
            z = 1.0 / (1.0 + (-z.array()).exp());
            break;
        case Activation::softmax:
            // max-subtraction keeps the exponentials bounded
            for (Eigen::Index c = 0; c < z.cols(); ++c) {
                Eigen::ArrayXd col = z.col(c).array() - z.col(c).maxCoeff();
                col = col.exp();
                z.col(c) = col / col.sum();
            }
            break;
    }
}

// dLoss/dPre from dLoss/dPost; `pre` and `post` are this layer's cache.
Eigen::MatrixXd activation_backward(Activation act, const Eigen::MatrixXd& pre,
                                    const Eigen::MatrixXd& post, const Eigen::MatrixXd& g) {
    switch (act) {
        case Activation::identity:
            return g;
        case Activation::relu:
            return (pre.array() > 0.0).cast<double>() * g.array();
        case Activation::tanh:
            return (1.0 - post.array().square()) * g.array();
        case Activation::sigmoid:
            return post.array() * (1.0 - post.array()) * g.array();
        case Activation::softmax: {
            // dz = y .* (g - (y . g)) columnwise
            Eigen::MatrixXd out(post.rows(), post.cols());
            for (Eigen::Index c = 0; c < post.cols(); ++c) {
                const double dot = post.col(c).dot(g.col(c));
                out.col(c) = post.col(c).array() * (g.col(c).array() - dot);
            }
            return out;
        }
    }
    return g;
}

}  // namespace

int NetworkParams::input_size() const {
    return layers.empty() ? 0 : static_cast<int>(layers.front().weight.cols());
}

int NetworkParams::output_size() const {
    return layers.empty() ? 0 : static_cast<int>(layers.back().weight.rows());
}

bool NetworkParams::all_finite() const {
    for (const auto& l : layers) {
        if (!l.weight.allFinite() || !l.bias.allFinite()) return false;
    }
    return true;
}

void NetworkParams::validate() const {
    for (size_t k = 0; k < layers.size(); ++k) {
        const auto& l = layers[k];
        if (l.weight.rows() != l.bias.size())
            throw ConfigError("network: bias length does not match weight rows");
        if (k > 0 && layers[k - 1].weight.rows() != l.weight.cols())
            throw ConfigError("network: adjacent layer dimensions do not chain");
    }
    if (!all_finite()) throw ConfigError("network: non-finite parameter entries");
}

bool ParamGrads::all_finite() const {
    for (const auto& l : layers) {
        if (!l.weight.allFinite() || !l.bias.allFinite()) return false;
    }
    return true;
}

ParamGrads ParamGrads::zeros_like(const NetworkParams& net) {
    ParamGrads g;
    g.layers.reserve(net.layers.size());
    for (const auto& l : net.layers) {
        g.layers.push_back({Eigen::MatrixXd::Zero(l.weight.rows(), l.weight.cols()),
                            Eigen::VectorXd::Zero(l.bias.size())});
    }
    return g;
}

Eigen::VectorXd apply_activation(Activation act, const Eigen::VectorXd& z) {
    Eigen::MatrixXd m = z;
    activate_inplace(act, m);
    return m.col(0);
}

Eigen::MatrixXd dense_forward_batch(const NetworkParams& net, const Eigen::MatrixXd& x,
                                    ForwardCache* cache) {
    if (net.layers.empty()) throw ConfigError("dense_forward: empty network");
    if (x.rows() != net.input_size())
        throw ConfigError("dense_forward: input length does not match first-layer input size");

    if (cache) {
        cache->input = x;
        cache->pre.clear();
        cache->post.clear();
        cache->pre.reserve(net.layers.size());
        cache->post.reserve(net.layers.size());
    }

    Eigen::MatrixXd a = x;
    for (const auto& layer : net.layers) {
        Eigen::MatrixXd z = layer.weight * a;
        z.colwise() += layer.bias;
        if (cache) cache->pre.push_back(z);
        activate_inplace(layer.activation, z);
        if (cache) cache->post.push_back(z);
        a = std::move(z);
    }
    return a;
}

Eigen::VectorXd dense_forward(const NetworkParams& net, const Eigen::VectorXd& x,
                              ForwardCache* cache) {
    return dense_forward_batch(net, x, cache).col(0);
}

BackwardResult dense_backward_batch(const NetworkParams& net, const ForwardCache& cache,
                                    const Eigen::MatrixXd& output_grad) {
    const size_t n = net.layers.size();
    if (cache.pre.size() != n || cache.post.size() != n)
        throw ConfigError("dense_backward: cache does not match network depth");
    if (output_grad.rows() != net.output_size() || output_grad.cols() != cache.input.cols())
        throw ConfigError("dense_backward: stale cache or mismatched output gradient");

    BackwardResult res;
    res.grads.layers.resize(n);

    Eigen::MatrixXd g = output_grad;
    for (size_t k = n; k-- > 0;) {
        const auto& layer = net.layers[k];
        Eigen::MatrixXd dz = activation_backward(layer.activation, cache.pre[k], cache.post[k], g);
        const Eigen::MatrixXd& below = (k == 0) ? cache.input : cache.post[k - 1];
        res.grads.layers[k].weight = dz * below.transpose();
        res.grads.layers[k].bias = dz.rowwise().sum();
        g = layer.weight.transpose() * dz;
    }
    res.input_grad = std::move(g);
    return res;
}

std::pair<ParamGrads, Eigen::VectorXd> dense_backward(const NetworkParams& net,
                                                      const ForwardCache& cache,
                                                      const Eigen::VectorXd& output_grad) {
    BackwardResult r = dense_backward_batch(net, cache, output_grad);
    return {std::move(r.grads), r.input_grad.col(0)};
}

NetworkParams make_network(int input, const std::vector<int>& hidden, int output,
                           Activation hidden_act, Activation output_act, SeededRng& rng) {
    if (input < 1 || output < 1) throw ConfigError("make_network: layer sizes must be positive");
    std::vector<int> sizes;
    sizes.push_back(input);
    for (int h : hidden) {
        if (h < 1) throw ConfigError("make_network: layer sizes must be positive");
        sizes.push_back(h);
    }
    sizes.push_back(output);

    NetworkParams net;
    for (size_t k = 0; k + 1 < sizes.size(); ++k) {
        const int fan_in = sizes[k];
        const int fan_out = sizes[k + 1];
        const double bound = std::sqrt(6.0 / (fan_in + fan_out));
        Layer layer;
        layer.weight.resize(fan_out, fan_in);
        for (int i = 0; i < fan_out; ++i)
            for (int j = 0; j < fan_in; ++j) layer.weight(i, j) = rng.uniform(-bound, bound);
        layer.bias = Eigen::VectorXd::Zero(fan_out);
        layer.activation = (k + 2 == sizes.size()) ? output_act : hidden_act;
        net.layers.push_back(std::move(layer));
    }
    return net;
}

}  // namespace srslab::numkit
