#include "boustro/speed_opt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Dense>

namespace boustro {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

struct ObjectiveModel {
    MatrixXd chords;  // n x q effective chords
    VectorXd priors;
    double tau;

    double value(const VectorXd& mu) const {
        const VectorXd e = (-(chords * mu) / tau).array().exp();
        return priors.dot(e);
    }
    // weights c_i = prior_i * exp(-L_i mu / tau); grad = -(1/tau) L^T c,
    // hess = (1/tau^2) L^T diag(c) L.
    void derivatives(const VectorXd& mu, double& f, VectorXd& grad, MatrixXd& hess) const {
        const VectorXd c =
            priors.array() * (-(chords * mu) / tau).array().exp();
        f = c.sum();
        grad = -(chords.transpose() * c) / tau;
        hess = chords.transpose() * c.asDiagonal() * chords / (tau * tau);
    }
};

SpeedSolution vertex_solution(const SpeedProblem& p, double s_total) {
    SpeedSolution sol;
    const std::size_t q = p.active.size();
    const double uniform = p.budget / s_total;
    sol.mu.assign(q, std::clamp(uniform, p.mu_lo, p.mu_hi));
    double p_nd = 0.0;
    for (std::size_t i = 0; i < p.source_count; ++i) {
        double exponent = 0.0;
        for (std::size_t a = 0; a < q; ++a)
            exponent += p.effective_chords[i * q + a] * sol.mu[a];
        p_nd += p.priors[i] * std::exp(-exponent / p.tau);
    }
    sol.p_nd_star = p_nd;
    sol.iterations = 0;
    sol.converged = true;
    return sol;
}

}  // namespace

SpeedProblem make_speed_problem(const std::vector<int>& counts, const EffortMatrix& em,
                                const std::vector<double>& priors, const AuvLimits& limits,
                                double budget) {
    SpeedProblem p;
    for (std::size_t j = 0; j < counts.size(); ++j) {
        if (counts[j] > 0) {
            p.active.push_back(static_cast<int>(j));
            p.effective_lengths.push_back(counts[j] * em.trackline_lengths[j]);
        }
    }
    const std::size_t q = p.active.size();
    p.source_count = em.source_count;
    p.priors = priors;
    p.effective_chords.resize(em.source_count * q);
    for (std::size_t i = 0; i < em.source_count; ++i)
        for (std::size_t a = 0; a < q; ++a) {
            const std::size_t j = static_cast<std::size_t>(p.active[a]);
            p.effective_chords[i * q + a] = counts[j] * em.chord(i, j);
        }
    p.tau = limits.tau;
    p.budget = budget;
    p.mu_lo = 1.0 / limits.v_max;
    p.mu_hi = 1.0 / limits.v_min;
    return p;
}

BudgetInterval feasible_budget_interval(const std::vector<int>& counts,
                                        const std::vector<double>& lengths, double v_min,
                                        double v_max) {
    double traveled = 0.0;
    bool any = false;
    for (std::size_t j = 0; j < counts.size(); ++j) {
        if (counts[j] > 0) {
            traveled += counts[j] * lengths[j];
            any = true;
        }
    }
    if (!any) throw EmptySelection("no trackline selected");
    return BudgetInterval{traveled / v_max, traveled / v_min};
}

SpeedSolution solve_speeds(const SpeedProblem& problem, const SolverOptions& options) {
    const std::size_t q = problem.active.size();
    if (q == 0) throw EmptySelection("speed problem has no active tracklines");

    double s_total = 0.0;
    for (double s : problem.effective_lengths) s_total += s;
    const double t_lo = s_total * problem.mu_lo;
    const double t_hi = s_total * problem.mu_hi;
    const double feas_tol = 1e-9 * std::max(1.0, t_hi);
    if (problem.budget < t_lo - feas_tol || problem.budget > t_hi + feas_tol)
        throw InfeasibleBudget(t_lo, t_hi,
                               "budget " + std::to_string(problem.budget) +
                                   " outside feasible interval [" + std::to_string(t_lo) +
                                   ", " + std::to_string(t_hi) + "]");

    const double span = t_hi - t_lo;
    const double boundary_tol = 1e-9 * std::max(span, 1.0);
    // At the interval ends the equality constraint forces the vertex; with a
    // single variable it fixes mu outright. No interior point exists there.
    if (q == 1 || span <= 0.0 || problem.budget <= t_lo + boundary_tol ||
        problem.budget >= t_hi - boundary_tol)
        return vertex_solution(problem, s_total);

    const auto nq = static_cast<Eigen::Index>(q);
    // effective_chords is row-major n x q; copy into Eigen's layout.
    MatrixXd chords(static_cast<Eigen::Index>(problem.source_count), nq);
    for (std::size_t i = 0; i < problem.source_count; ++i)
        for (std::size_t a = 0; a < q; ++a)
            chords(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(a)) =
                problem.effective_chords[i * q + a];
    const ObjectiveModel model{
        std::move(chords),
        Eigen::Map<const VectorXd>(problem.priors.data(),
                                   static_cast<Eigen::Index>(problem.priors.size())),
        problem.tau};

    const VectorXd s = Eigen::Map<const VectorXd>(problem.effective_lengths.data(), nq);

    // Householder basis of null(s^T): H maps s to a multiple of e1; its
    // remaining columns are an orthonormal basis of the null space.
    VectorXd v = s;
    v(0) += s.norm();
    MatrixXd householder =
        MatrixXd::Identity(nq, nq) - (2.0 / v.squaredNorm()) * (v * v.transpose());
    const MatrixXd null_basis = householder.rightCols(nq - 1);

    VectorXd mu = VectorXd::Constant(nq, problem.budget / s_total);
    const double lo = problem.mu_lo;
    const double hi = problem.mu_hi;

    const auto barrier_value = [&](const VectorXd& m, double sigma) {
        double val = model.value(m);
        for (Eigen::Index a = 0; a < nq; ++a) {
            const double dl = m(a) - lo;
            const double dh = hi - m(a);
            if (dl <= 0.0 || dh <= 0.0) return std::numeric_limits<double>::infinity();
            val -= sigma * (std::log(dl) + std::log(dh));
        }
        return val;
    };

    int total_steps = 0;
    double sigma = options.barrier_init;
    const double gap_target = options.gap_tol / (2.0 * static_cast<double>(q));

    const auto fail = [&](const std::string& why) {
        SpeedSolution best;
        best.mu.assign(mu.data(), mu.data() + nq);
        best.p_nd_star = model.value(mu);
        best.iterations = total_steps;
        best.converged = false;
        throw NoConvergence(std::move(best), why);
    };

    for (;;) {
        // Newton iterations in the null-space coordinates at this sigma.
        for (;;) {
            double f;
            VectorXd grad;
            MatrixXd hess;
            model.derivatives(mu, f, grad, hess);
            VectorXd grad_phi = grad;
            VectorXd hess_diag = VectorXd::Zero(nq);
            for (Eigen::Index a = 0; a < nq; ++a) {
                const double dl = mu(a) - lo;
                const double dh = hi - mu(a);
                grad_phi(a) += -sigma / dl + sigma / dh;
                hess_diag(a) = sigma / (dl * dl) + sigma / (dh * dh);
            }
            const VectorXd g_w = null_basis.transpose() * grad_phi;
            MatrixXd h_w = null_basis.transpose() *
                           (hess + MatrixXd(hess_diag.asDiagonal())) * null_basis;
            Eigen::LLT<MatrixXd> llt(h_w);
            VectorXd dw;
            if (llt.info() == Eigen::Success) {
                dw = -llt.solve(g_w);
            } else {
                dw = -h_w.ldlt().solve(g_w);
            }
            const double decrement_sq = -g_w.dot(dw);
            if (decrement_sq * 0.5 <= options.newton_tol) break;

            const VectorXd dmu = null_basis * dw;
            double alpha = 1.0;
            for (Eigen::Index a = 0; a < nq; ++a) {
                if (dmu(a) > 0.0) alpha = std::min(alpha, 0.99 * (hi - mu(a)) / dmu(a));
                else if (dmu(a) < 0.0) alpha = std::min(alpha, 0.99 * (mu(a) - lo) / -dmu(a));
            }
            const double phi0 = barrier_value(mu, sigma);
            const double slope = grad_phi.dot(dmu);
            while (alpha > 1e-14 &&
                   barrier_value(mu + alpha * dmu, sigma) > phi0 + 1e-4 * alpha * slope)
                alpha *= 0.5;
            if (alpha <= 1e-14) fail("line search stalled");
            mu += alpha * dmu;
            if (++total_steps >= options.max_newton_steps)
                fail("Newton step budget exhausted");
        }
        if (sigma <= gap_target) break;
        sigma = std::max(sigma * options.barrier_decrease, gap_target * 0.999);
    }

    SpeedSolution sol;
    sol.mu.assign(mu.data(), mu.data() + nq);
    sol.p_nd_star = model.value(mu);
    sol.iterations = total_steps;
    sol.converged = true;
    return sol;
}

}  // namespace boustro
