#include "srslab/agents/ddpg.hpp"

#include <cmath>

#include "srslab/agents/qlearning.hpp"
#include "srslab/errors.hpp"

namespace srslab::agents {

using numkit::Activation;
using numkit::ForwardCache;
using numkit::NetworkParams;

namespace {

Eigen::MatrixXd stack(const Eigen::MatrixXd& top, const Eigen::MatrixXd& bottom) {
    Eigen::MatrixXd out(top.rows() + bottom.rows(), top.cols());
    out.topRows(top.rows()) = top;
    out.bottomRows(bottom.rows()) = bottom;
    return out;
}

}  // namespace

DdpgResult ddpg_update(const Batch& batch, NetworkParams& actor, NetworkParams& critic,
                       const NetworkParams& target_actor, const NetworkParams& target_critic,
                       double gamma, numkit::OptimizerState& actor_opt,
                       numkit::OptimizerState& critic_opt) {
    const int b = batch.size();
    if (b == 0) throw UsageError("ddpg_update: empty batch");
    if (batch.action_vecs.cols() != b)
        throw UsageError("ddpg_update: batch has no continuous actions");

    DdpgResult result;

    // critic step
    {
        const Eigen::MatrixXd next_actions = numkit::dense_forward_batch(target_actor, batch.next_states);
        const Eigen::MatrixXd q_next =
            numkit::dense_forward_batch(target_critic, stack(batch.next_states, next_actions));
        Eigen::VectorXd y(b);
        for (int i = 0; i < b; ++i)
            y[i] = batch.done[i] ? batch.rewards[i] : batch.rewards[i] + gamma * q_next(0, i);

        ForwardCache cache;
        const Eigen::MatrixXd q =
            numkit::dense_forward_batch(critic, stack(batch.states, batch.action_vecs), &cache);
        Eigen::MatrixXd grad(1, b);
        for (int i = 0; i < b; ++i) {
            const double residual = q(0, i) - y[i];
            result.critic_loss += residual * residual;
            grad(0, i) = 2.0 * residual / b;
        }
        result.critic_loss /= b;
        if (!std::isfinite(result.critic_loss)) throw NumericsError("ddpg_update: non-finite critic loss");

        auto res = numkit::dense_backward_batch(critic, cache, grad);
        numkit::optimizer_step(critic, res.grads, critic_opt);
    }

    // actor step: ascend mean Q(s, mu(s)); critic parameters stay fixed here
    {
        ForwardCache actor_cache;
        const Eigen::MatrixXd actions = numkit::dense_forward_batch(actor, batch.states, &actor_cache);
        ForwardCache critic_cache;
        const Eigen::MatrixXd q =
            numkit::dense_forward_batch(critic, stack(batch.states, actions), &critic_cache);
        result.actor_objective = q.row(0).mean();
        if (!std::isfinite(result.actor_objective))
            throw NumericsError("ddpg_update: non-finite actor objective");

        const Eigen::MatrixXd ones = Eigen::MatrixXd::Constant(1, b, 1.0 / b);
        auto through_critic = numkit::dense_backward_batch(critic, critic_cache, ones);
        // action rows of the critic input gradient, negated for ascent
        const Eigen::MatrixXd dq_da =
            through_critic.input_grad.bottomRows(actions.rows());
        auto res = numkit::dense_backward_batch(actor, actor_cache, -dq_da);
        numkit::optimizer_step(actor, res.grads, actor_opt);
    }

    return result;
}

DdpgLearner DdpgLearner::make(int input_dim, int action_dim, const AgentConfig& cfg,
                              numkit::SeededRng& rng) {
    DdpgLearner l;
    l.actor = numkit::make_network(input_dim, cfg.hidden, action_dim, Activation::relu,
                                   Activation::tanh, rng);
    l.critic = numkit::make_network(input_dim + action_dim, cfg.hidden, 1, Activation::relu,
                                    Activation::identity, rng);
    l.target_actor = l.actor;
    l.target_critic = l.critic;
    l.actor_opt = numkit::make_adam(cfg.learning_rate);
    l.critic_opt = numkit::make_adam(cfg.learning_rate);
    l.gamma = cfg.gamma;
    l.tau = cfg.tau;
    return l;
}

Eigen::VectorXd DdpgLearner::act(const Eigen::VectorXd& state, double noise_scale,
                                 numkit::SeededRng& rng) const {
    Eigen::VectorXd a = numkit::dense_forward(actor, state);
    if (noise_scale > 0.0) a += noise_scale * rng.normal_vector(static_cast<int>(a.size()));
    return a;
}

Eigen::VectorXd DdpgLearner::greedy(const Eigen::VectorXd& state) const {
    return numkit::dense_forward(actor, state);
}

DdpgResult DdpgLearner::update(const Batch& batch) {
    DdpgResult r = ddpg_update(batch, actor, critic, target_actor, target_critic, gamma,
                               actor_opt, critic_opt);
    soft_sync(target_actor, actor, tau);
    soft_sync(target_critic, critic, tau);
    return r;
}

}  // namespace srslab::agents
