#pragma once

#include <set>
#include <vector>

#include <Eigen/Core>

namespace srslab::envsim {

// Finite MDP used as an exact-equivalence oracle for the learners.
struct TabularMdp {
    int n_states = 0;
    int n_actions = 0;
    // transition[s][a] is a probability vector over next states
    std::vector<std::vector<Eigen::VectorXd>> transition;
    // mean rewards in [0, 1]
    std::vector<std::vector<double>> reward;
    double gamma = 0.9;
    std::set<int> terminal;

    void validate() const;  // throws ConfigError
};

// Solves the Bellman optimality equation to sup-norm residual <= tol.
// Q*(s,a) = R[s][a] + gamma * sum_s' P[s][a][s'] * max_a' Q*(s',a'),
// with max_a' Q*(s', .) taken as 0 for terminal s'.
Eigen::MatrixXd value_iteration(const TabularMdp& mdp, double tol);

// Sup-norm residual of the Bellman optimality operator at Q.
double bellman_residual(const TabularMdp& mdp, const Eigen::MatrixXd& q);

}  // namespace srslab::envsim
