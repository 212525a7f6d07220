#pragma once

// Central finite-difference oracle for the AD tests. Uses only the value
// path of Expression, never eval_jet2, so it stays independent of the jet
// arithmetic it is checking.

#include <Eigen/Dense>
#include <vector>

#include "shearlab/expr.hpp"

namespace testsupport {

inline double fd_eval(const shearlab::Expression& e, Eigen::VectorXd x) {
    return e.eval(std::span<const double>(x.data(), static_cast<std::size_t>(x.size())));
}

inline Eigen::VectorXd fd_gradient(const shearlab::Expression& e, const Eigen::VectorXd& x,
                                   double h = 1e-5) {
    const int n = static_cast<int>(x.size());
    Eigen::VectorXd g(n);
    for (int i = 0; i < n; ++i) {
        Eigen::VectorXd xp = x, xm = x;
        xp[i] += h;
        xm[i] -= h;
        g[i] = (fd_eval(e, xp) - fd_eval(e, xm)) / (2.0 * h);
    }
    return g;
}

inline Eigen::MatrixXd fd_hessian(const shearlab::Expression& e, const Eigen::VectorXd& x,
                                  double h = 1e-5) {
    const int n = static_cast<int>(x.size());
    Eigen::MatrixXd H(n, n);
    const double f0 = fd_eval(e, x);
    for (int i = 0; i < n; ++i) {
        Eigen::VectorXd xp = x, xm = x;
        xp[i] += h;
        xm[i] -= h;
        H(i, i) = (fd_eval(e, xp) - 2.0 * f0 + fd_eval(e, xm)) / (h * h);
        for (int j = i + 1; j < n; ++j) {
            Eigen::VectorXd xpp = x, xpm = x, xmp = x, xmm = x;
            xpp[i] += h; xpp[j] += h;
            xpm[i] += h; xpm[j] -= h;
            xmp[i] -= h; xmp[j] += h;
            xmm[i] -= h; xmm[j] -= h;
            double v = (fd_eval(e, xpp) - fd_eval(e, xpm) - fd_eval(e, xmp) + fd_eval(e, xmm)) /
                       (4.0 * h * h);
            H(i, j) = v;
            H(j, i) = v;
        }
    }
    return H;
}

}  // namespace testsupport
