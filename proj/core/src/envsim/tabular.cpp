#include "srslab/envsim/tabular.hpp"

#include <cmath>

#include "srslab/errors.hpp"

namespace srslab::envsim {

void TabularMdp::validate() const {
    if (n_states < 1 || n_actions < 1) throw ConfigError("tabular: state/action counts must be >= 1");
    if (static_cast<int>(transition.size()) != n_states ||
        static_cast<int>(reward.size()) != n_states)
        throw ConfigError("tabular: table sizes do not match n_states");
    if (!(gamma >= 0.0 && gamma < 1.0)) throw ConfigError("tabular: gamma must be in [0, 1)");
    for (int s = 0; s < n_states; ++s) {
        if (static_cast<int>(transition[s].size()) != n_actions ||
            static_cast<int>(reward[s].size()) != n_actions)
            throw ConfigError("tabular: table sizes do not match n_actions");
        for (int a = 0; a < n_actions; ++a) {
            if (transition[s][a].size() != n_states)
                throw ConfigError("tabular: transition row length != n_states");
            if (std::abs(transition[s][a].sum() - 1.0) > 1e-12)
                throw ConfigError("tabular: transition row does not sum to 1");
            if (reward[s][a] < 0.0 || reward[s][a] > 1.0)
                throw ConfigError("tabular: reward outside [0, 1]");
        }
    }
}

namespace {

Eigen::MatrixXd bellman_backup(const TabularMdp& mdp, const Eigen::MatrixXd& q) {
    Eigen::VectorXd v(mdp.n_states);
    for (int s = 0; s < mdp.n_states; ++s)
        v[s] = mdp.terminal.count(s) ? 0.0 : q.row(s).maxCoeff();
    Eigen::MatrixXd next(mdp.n_states, mdp.n_actions);
    for (int s = 0; s < mdp.n_states; ++s)
        for (int a = 0; a < mdp.n_actions; ++a)
            next(s, a) = mdp.reward[s][a] + mdp.gamma * mdp.transition[s][a].dot(v);
    return next;
}

}  // namespace

double bellman_residual(const TabularMdp& mdp, const Eigen::MatrixXd& q) {
    return (bellman_backup(mdp, q) - q).cwiseAbs().maxCoeff();
}

Eigen::MatrixXd value_iteration(const TabularMdp& mdp, double tol) {
    mdp.validate();
    if (tol <= 0.0) throw UsageError("value_iteration: tol must be positive");
    Eigen::MatrixXd q = Eigen::MatrixXd::Zero(mdp.n_states, mdp.n_actions);
    // gamma < 1 makes the backup a contraction, so this terminates
    for (int iter = 0; iter < 1000000; ++iter) {
        Eigen::MatrixXd next = bellman_backup(mdp, q);
        const double delta = (next - q).cwiseAbs().maxCoeff();
        q = std::move(next);
        if (delta <= tol * std::max(1e-12, 1.0 - mdp.gamma)) break;
    }
    return q;
}

}  // namespace srslab::envsim
