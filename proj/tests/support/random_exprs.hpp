#pragma once

// Deterministic generator of random polynomial-with-trig expression strings,
// smooth on all of R^n so the finite-difference oracle never leaves the
// domain.

#include <random>
#include <string>
#include <vector>

namespace testsupport {

struct RandomExpr {
    std::string source;
    std::vector<std::string> vars;
};

inline RandomExpr random_poly_trig(std::mt19937_64& rng, int max_vars = 3) {
    std::uniform_int_distribution<int> nvars_d(1, max_vars);
    std::uniform_int_distribution<int> terms_d(2, 6);
    std::uniform_int_distribution<int> deg_d(0, 3);
    std::uniform_real_distribution<double> coef_d(-2.0, 2.0);
    std::uniform_int_distribution<int> trig_d(0, 3);

    const int n = nvars_d(rng);
    std::vector<std::string> vars;
    for (int i = 0; i < n; ++i) vars.push_back("u" + std::to_string(i + 1));

    std::uniform_int_distribution<int> var_d(0, n - 1);
    std::string src;
    const int terms = terms_d(rng);
    for (int t = 0; t < terms; ++t) {
        std::string term = std::to_string(coef_d(rng));
        int deg = deg_d(rng);
        for (int d = 0; d < deg; ++d) term += "*" + vars[static_cast<std::size_t>(var_d(rng))];
        switch (trig_d(rng)) {
            case 0: break;  // pure monomial
            case 1: term += "*sin(" + vars[static_cast<std::size_t>(var_d(rng))] + ")"; break;
            case 2: term += "*cos(" + vars[static_cast<std::size_t>(var_d(rng))] + ")"; break;
            case 3: {
                // trig of a linear form keeps the mixed partials interesting
                std::string arg = std::to_string(coef_d(rng)) + "*" +
                                  vars[static_cast<std::size_t>(var_d(rng))];
                term += "*sin(" + arg + ")";
                break;
            }
        }
        if (t > 0) src += " + ";
        src += term;
    }
    return {src, vars};
}

}  // namespace testsupport
