#pragma once

#include <functional>

#include <Eigen/Dense>

namespace qmetro {

struct NelderMeadResult {
    Eigen::VectorXd x;
    double value = 0.0;
    int evals = 0;
    bool converged = false;  // stopped on tolerance rather than budget
};

// Classic Nelder-Mead simplex minimization. The initial simplex is x0
// plus scale-sized steps along each coordinate. Terminates when the
// relative objective spread over the simplex drops below rel_tol or the
// evaluation budget is exhausted.
NelderMeadResult nelder_mead(const std::function<double(const Eigen::VectorXd&)>& f,
                             const Eigen::VectorXd& x0, double scale, double rel_tol,
                             int max_evals);

// 1D golden-section minimization on [lo, hi] to the given relative
// x-tolerance; returns (x_min, f_min).
std::pair<double, double> golden_section(const std::function<double(double)>& f, double lo,
                                         double hi, double rel_tol = 1e-4);

}  // namespace qmetro
