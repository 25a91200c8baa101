// Prints the orthonormal basis for a small degree: exact coefficient table,
// then a numeric spot check of the Gram matrix on [0,1].
#include <orthobern/orthobern.hpp>

#include <cstdio>
#include <cstdlib>

using namespace orthobern;

int main(int argc, char** argv) {
    const int n = argc > 1 ? std::atoi(argv[1]) : 5;
    if (n < 0 || n > kMaxExactDegree) {
        std::fprintf(stderr, "usage: %s [degree <= %d]\n", argv[0], kMaxExactDegree);
        return 2;
    }

    std::printf("orthonormal basis, degree n = %d\n", n);
    std::printf("phi_j(t) = sqrt(2(n-j)+1) * (integer polynomial)\n\n");
    for (int j = 0; j <= n; ++j) {
        const OrthoCoeffs& oc = onb_coeffs(n, j);
        std::printf("  j = %2d   sqrt(%2ld) * [", j, oc.radicand);
        for (std::size_t i = 0; i < oc.power.size(); ++i)
            std::printf("%s%s t^%zu", i ? " + " : "", oc.power[i].str().c_str(), i);
        std::printf("]\n");
    }

    std::printf("\nexact double sums (radical-stripped inner products):\n");
    for (int i = 0; i <= n; ++i) {
        std::printf("  ");
        for (int j = 0; j <= n; ++j) std::printf("%8s", ortho_double_sum(n, i, j).str().c_str());
        std::printf("\n");
    }

    std::printf("\nnumeric Gram matrix on [0,1], %d-node Gauss rule:\n", n + 1);
    std::vector<double> xs, ws;
    detail::composite_nodes(Interval(0.0, 1.0), QuadratureRule::for_polynomial_degree(2 * n), xs, ws);
    BasisSpec spec(n, Interval(0.0, 1.0));
    for (int i = 0; i <= n; ++i) {
        std::printf("  ");
        for (int j = 0; j <= n; ++j) {
            double g = 0.0;
            for (std::size_t q = 0; q < xs.size(); ++q) {
                const std::vector<double> phi = onb_eval_all(spec, xs[q]);
                g += ws[q] * phi[i] * phi[j];
            }
            std::printf("%10.2e", g - (i == j ? 1.0 : 0.0));
        }
        std::printf("\n");
    }
    std::printf("  (entries shown as deviation from the identity)\n");
    return 0;
}
