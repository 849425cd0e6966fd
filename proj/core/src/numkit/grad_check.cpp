#include "srslab/numkit/grad_check.hpp"

#include <cmath>

#include "srslab/errors.hpp"

namespace srslab::numkit {

ParamGrads finite_difference_grads(const NetworkParams& net, const ScalarLoss& loss,
                                   const Eigen::VectorXd& probe, double h) {
    if (h <= 0.0) throw UsageError("finite_difference_grads: h must be positive");
    NetworkParams work = net;
    ParamGrads fd = ParamGrads::zeros_like(net);

    auto eval = [&]() { return loss.value(dense_forward(work, probe)); };

    for (size_t k = 0; k < net.layers.size(); ++k) {
        auto& w = work.layers[k].weight;
        for (Eigen::Index i = 0; i < w.rows(); ++i) {
            for (Eigen::Index j = 0; j < w.cols(); ++j) {
                const double orig = w(i, j);
                w(i, j) = orig + h;
                const double up = eval();
                w(i, j) = orig - h;
                const double down = eval();
                w(i, j) = orig;
                fd.layers[k].weight(i, j) = (up - down) / (2.0 * h);
            }
        }
        auto& b = work.layers[k].bias;
        for (Eigen::Index i = 0; i < b.size(); ++i) {
            const double orig = b[i];
            b[i] = orig + h;
            const double up = eval();
            b[i] = orig - h;
            const double down = eval();
            b[i] = orig;
            fd.layers[k].bias[i] = (up - down) / (2.0 * h);
        }
    }
    return fd;
}

double max_relative_error(const ParamGrads& a, const ParamGrads& b) {
    if (a.layers.size() != b.layers.size())
        throw ConfigError("max_relative_error: layer count mismatch");
    double worst = 0.0;
    auto update = [&](double x, double y) {
        const double err = std::abs(x - y) / std::max(1e-8, std::abs(x) + std::abs(y));
        if (err > worst) worst = err;
    };
    for (size_t k = 0; k < a.layers.size(); ++k) {
        const auto& la = a.layers[k];
        const auto& lb = b.layers[k];
        for (Eigen::Index i = 0; i < la.weight.rows(); ++i)
            for (Eigen::Index j = 0; j < la.weight.cols(); ++j)
                update(la.weight(i, j), lb.weight(i, j));
        for (Eigen::Index i = 0; i < la.bias.size(); ++i) update(la.bias[i], lb.bias[i]);
    }
    return worst;
}

double grad_check(const NetworkParams& net, const ScalarLoss& loss, const Eigen::VectorXd& probe,
                  double h) {
    if (net.layers.empty()) return 0.0;
    ForwardCache cache;
    const Eigen::VectorXd out = dense_forward(net, probe, &cache);
    auto [analytic, dx] = dense_backward(net, cache, loss.grad(out));
    (void)dx;
    const ParamGrads fd = finite_difference_grads(net, loss, probe, h);
    return max_relative_error(analytic, fd);
}

}  // namespace srslab::numkit
