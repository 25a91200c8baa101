// Fits the default Lissajous curve over a sweep of degrees and prints the
// mean-square reconstruction error per degree, then recovers classical Bezier
// control points at the top degree.
#include <orthobern/orthobern.hpp>

#include <cstdio>

using namespace orthobern;

int main() {
    LissajousParams p;
    auto fx = [&](double t) { return lissajous(p, t).first; };
    auto fy = [&](double t) { return lissajous(p, t).second; };

    std::printf("lissajous fit on [%.6f, %.6f], orthonormal projection\n", p.t_interval.a, p.t_interval.b);
    std::printf("%6s  %12s\n", "n", "E");
    for (const FitReport& r : degree_sweep(fx, fy, p.t_interval, 4, 20, BasisKind::orthonormal))
        std::printf("%6d  %12.4e\n", r.n, r.error);

    const int n = 20;
    BasisSpec spec(n, p.t_interval);
    SampleGrid grid(p.t_interval, 1001);
    ControlVector bx = bezier_curve_recover(fx, spec), by = bezier_curve_recover(fy, spec);
    std::printf("\nbezier recovery at n = %d: E = %.4e\n", n, mse_curve(fx, fy, bx, by, grid));
    std::printf("first control points: (%.6f, %.6f), (%.6f, %.6f), ...\n", bx.values[0], by.values[0],
                bx.values[1], by.values[1]);
    return 0;
}
