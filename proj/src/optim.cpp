#include "qmetro/optim.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace qmetro {

NelderMeadResult nelder_mead(const std::function<double(const Eigen::VectorXd&)>& f,
                             const Eigen::VectorXd& x0, double scale, double rel_tol,
                             int max_evals) {
    const int n = static_cast<int>(x0.size());
    const double alpha = 1.0, gamma = 2.0, rho = 0.5, sigma = 0.5;

    NelderMeadResult res;
    std::vector<Eigen::VectorXd> xs(n + 1, x0);
    std::vector<double> fs(n + 1);
    for (int i = 1; i <= n; ++i) xs[i](i - 1) += scale;
    for (int i = 0; i <= n; ++i) fs[i] = f(xs[i]);
    res.evals = n + 1;

    std::vector<int> order(n + 1);
    while (res.evals < max_evals) {
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](int a, int b) { return fs[a] < fs[b]; });
        const int best = order[0], worst = order[n], second_worst = order[n - 1];

        const double spread = std::abs(fs[worst] - fs[best]);
        if (spread <= rel_tol * (std::abs(fs[best]) + rel_tol)) {
            res.converged = true;
            break;
        }

        Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
        for (int i = 0; i <= n; ++i)
            if (i != worst) centroid += xs[i];
        centroid /= n;

        Eigen::VectorXd xr = centroid + alpha * (centroid - xs[worst]);
        const double fr = f(xr);
        ++res.evals;

        if (fr < fs[best]) {
            Eigen::VectorXd xe = centroid + gamma * (xr - centroid);
            const double fe = f(xe);
            ++res.evals;
            if (fe < fr) {
                xs[worst] = std::move(xe);
                fs[worst] = fe;
            } else {
                xs[worst] = std::move(xr);
                fs[worst] = fr;
            }
        } else if (fr < fs[second_worst]) {
            xs[worst] = std::move(xr);
            fs[worst] = fr;
        } else {
            const bool outside = fr < fs[worst];
            Eigen::VectorXd xc = outside ? Eigen::VectorXd(centroid + rho * (xr - centroid))
                                         : Eigen::VectorXd(centroid - rho * (centroid - xs[worst]));
            const double fc = f(xc);
            ++res.evals;
            if (fc < std::min(fr, fs[worst])) {
                xs[worst] = std::move(xc);
                fs[worst] = fc;
            } else {
                // Shrink towards the best vertex.
                for (int i = 0; i <= n; ++i) {
                    if (i == best) continue;
                    xs[i] = xs[best] + sigma * (xs[i] - xs[best]);
                    fs[i] = f(xs[i]);
                }
                res.evals += n;
            }
        }
    }

    int best = 0;
    for (int i = 1; i <= n; ++i)
        if (fs[i] < fs[best]) best = i;
    res.x = xs[best];
    res.value = fs[best];
    return res;
}

std::pair<double, double> golden_section(const std::function<double(double)>& f, double lo,
                                         double hi, double rel_tol) {
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = f(c), fd = f(d);
    while ((b - a) > rel_tol * std::max(std::abs(a), std::abs(b))) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = f(d);
        }
    }
    const double xm = 0.5 * (a + b);
    return {xm, f(xm)};
}

}  // namespace qmetro
