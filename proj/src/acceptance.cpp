// Acceptance suite: one check per shipped claim, each printed as a single
// PASS/FAIL line with the measured number and its bound.

#include "gmms/acceptance.hpp"

#include <Eigen/Dense>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <random>
#include <sstream>
#include <vector>

#include "gmms/fock.hpp"
#include "gmms/metrics.hpp"
#include "gmms/phasespace.hpp"
#include "gmms/purify.hpp"
#include "gmms/special.hpp"
#include "gmms/states.hpp"

namespace gmms {

namespace {

class Suite {
public:
    explicit Suite(std::ostream& out) : out_(out) {}

    void check(const std::string& name, bool pass, const std::string& detail) {
        ++index_;
        out_ << '[' << std::setw(2) << index_ << "] " << (pass ? "PASS" : "FAIL") << "  " << name
             << "  (" << detail << ")\n";
        all_ &= pass;
    }

    bool all() const { return all_; }

private:
    std::ostream& out_;
    int index_ = 0;
    bool all_ = true;
};

std::string sci(double v) {
    std::ostringstream s;
    s << std::scientific << std::setprecision(2) << v;
    return s.str();
}

double max_entry_dev(const FockDensityOperator& a, const FockDensityOperator& b) {
    double dev = 0.0;
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j) dev = std::max(dev, std::abs(a(i, j) - b(i, j)));
    return dev;
}

AncillaUnitary haar_like_unitary(FockCutoff cutoff, std::mt19937_64& rng) {
    const int d = cutoff.dim();
    std::normal_distribution<double> gauss;
    Eigen::MatrixXcd g(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) g(i, j) = cplx(gauss(rng), gauss(rng));
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
    Eigen::MatrixXcd q = qr.householderQ();
    std::vector<cplx> u(static_cast<std::size_t>(d) * d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) u[static_cast<std::size_t>(i) * d + j] = q(i, j);
    return {cutoff, std::move(u), 1e-10};
}

} // namespace

bool run_acceptance(std::ostream& out) {
    Suite suite(out);
    const ToleranceProfile tol;

    // 1. Thermal/TMSV correspondence.
    {
        const auto t0 = std::chrono::steady_clock::now();
        double dev = 0.0;
        for (double zeta : {0.25, 0.5, 1.0, 2.0}) {
            const double nbar = std::sinh(zeta) * std::sinh(zeta);
            const FockCutoff cutoff{auto_cutoff(GmmsSpec::thermal(nbar), tol)};
            dev = std::max(dev, max_entry_dev(partial_trace_B(tmsv(zeta, cutoff, tol)),
                                              thermal_state(nbar, cutoff, tol)));
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        suite.check("thermal/TMSV correspondence, zeta in {0.25,0.5,1,2}", dev <= 1e-12 && secs < 1.0,
                    "max entry dev " + sci(dev) + " <= 1e-12, " + sci(secs) + " s < 1 s");
    }

    // 2. CVMMS unit trace + survival-sum identity.
    {
        double worst_deficit = 0.0, worst_identity = 0.0;
        bool over_unit = false;
        for (double x : {0.25, 1.0, 4.0, 25.0}) {
            const double b = std::sqrt(x);
            const FockCutoff cutoff{auto_cutoff(GmmsSpec::cvmms(b), tol)};
            const double trace = cvmms_state(b, cutoff, tol).trace();
            worst_deficit = std::max(worst_deficit, 1.0 - trace);
            over_unit |= trace > 1.0 + 1e-14;
            double sum = 0.0;
            for (int n = 0; n <= cutoff.n_max; ++n) sum += regularized_lower_gamma(n + 1, x);
            worst_identity = std::max(worst_identity, std::abs(sum - x) / x);
        }
        suite.check("CVMMS unit trace and sum_n P(n+1,x) = x, b^2 in {0.25,1,4,25}",
                    worst_deficit <= 1e-10 && !over_unit && worst_identity <= 1e-10,
                    "trace deficit " + sci(worst_deficit) + " <= 1e-10, identity rel dev " +
                        sci(worst_identity) + " <= 1e-10");
    }

    // 3. g-purification round trip for all four families.
    {
        double dev = 0.0, entropy_dev = 0.0;
        const auto round_trip = [&](const FockDensityOperator& rho) {
            const SchmidtPureState pure = g_purify(rho, tol);
            dev = std::max(dev, max_entry_dev(partial_trace_B(pure), rho));
            entropy_dev = std::max(entropy_dev,
                                   std::abs(entropy(partial_trace_B(pure), tol) - entropy(rho, tol)));
        };
        round_trip(thermal_state(1.0, FockCutoff{auto_cutoff(GmmsSpec::thermal(1.0), tol)}, tol));
        round_trip(cvmms_state(1.0, FockCutoff{auto_cutoff(GmmsSpec::cvmms(1.0), tol)}, tol));
        const GmmsSpec sq = GmmsSpec::squeezed(2.0, 0.3, 0.0);
        const FockDensityOperator rho_sq =
            quadrature_gmms(sq.b, sq.s, sq.phi, FockCutoff{auto_cutoff(sq, tol)}, {}, tol);
        round_trip(truncate_offdiagonal(rho_sq, tol).first);
        // The finite Riemann lattice also leaves genuine off-diagonal residue
        // (only |m-n| != 0 mod 4 cancels); it takes the same explicit
        // truncation step before purification.
        const FockDensityOperator rho_ri =
            riemann_gmms(1.0, 0.1, FockCutoff{auto_cutoff(GmmsSpec::riemann(1.0, 0.1), tol)}, tol);
        round_trip(truncate_offdiagonal(rho_ri, tol).first);
        suite.check("g-purification round trip, four families",
                    dev <= 1e-13 && entropy_dev <= 1e-12,
                    "max entry dev " + sci(dev) + " <= 1e-13, entropy dev " + sci(entropy_dev) +
                        " <= 1e-12");
    }

    // 4. Squeezed quadrature collapses onto CVMMS at s = 0.
    {
        double worst = 0.0, worst_change = 0.0;
        for (double b : {0.5, 1.0, 2.0}) {
            const FockCutoff cutoff{auto_cutoff(GmmsSpec::cvmms(b), tol)};
            const QuadratureSpec quad;
            const FockDensityOperator q = quadrature_gmms(b, 0.0, 0.0, cutoff, quad, tol);
            worst = std::max(worst, hs_distance(q, cvmms_state(b, cutoff, tol)));
            worst_change =
                std::max(worst_change, hs_distance(q, quadrature_gmms(b, 0.0, 0.0, cutoff,
                                                                      quad.doubled(), tol)));
        }
        suite.check("quadrature_gmms(b, s=0) = cvmms_state(b), b in {0.5,1,2}",
                    worst <= 1e-8 && worst_change <= 1e-8,
                    "max HS dist " + sci(worst) + " <= 1e-8, order-doubling change " +
                        sci(worst_change) + " <= 1e-8");
    }

    // 5. Husimi profile of cvmms(1): symmetric, centered, monotone, flattening.
    {
        const auto t0 = std::chrono::steady_clock::now();
        const double extent = 5.0;  // covers b + 4
        const int res = 81;
        const double corner = 2.0 * extent * extent;
        const FockCutoff cutoff{poisson_tail_cutoff(corner, tol.trace_tail)};
        const FockDensityOperator rho = cvmms_state(1.0, cutoff, tol);
        const PhaseSpaceGrid grid = husimi_grid(rho, extent, res, tol);

        double peak = 0.0;
        int peak_i = -1, peak_j = -1;
        for (int i = 0; i < res; ++i)
            for (int j = 0; j < res; ++j)
                if (grid.at(i, j) > peak) {
                    peak = grid.at(i, j);
                    peak_i = i;
                    peak_j = j;
                }
        const bool centered = peak_i == res / 2 && peak_j == res / 2;

        const double q0 = husimi_point(rho, 0.0, tol);
        const double q0_expect = (1.0 - std::exp(-1.0)) / M_PI;

        double spread = 0.0;
        for (double r : {0.7, 1.9, 3.1}) {
            double lo = 1e300, hi = 0.0;
            for (int k = 0; k < 16; ++k) {
                const double q = husimi_point(rho, std::polar(r, 2.0 * M_PI * k / 16.0), tol);
                lo = std::min(lo, q);
                hi = std::max(hi, q);
            }
            spread = std::max(spread, (hi - lo) / hi);
        }

        bool monotone = true;
        double prev = q0;
        for (int k = 1; k <= 40; ++k) {
            const double q = husimi_point(rho, cplx(0.1 * k, 0.0), tol);
            monotone &= q <= prev + 1e-15;
            prev = q;
        }

        const FockCutoff cutoff5{auto_cutoff(GmmsSpec::cvmms(5.0), tol)};
        const FockDensityOperator rho5 = cvmms_state(5.0, cutoff5, tol);
        const double ratio1 = q0 / husimi_point(rho, cplx(2.0, 0.0), tol);
        const double ratio5 =
            husimi_point(rho5, 0.0, tol) / husimi_point(rho5, cplx(2.0, 0.0), tol);
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

        suite.check("Husimi profile of cvmms(1): symmetry, peak, monotone radius, flattening",
                    centered && std::abs(q0 - q0_expect) <= 1e-10 && spread < 1e-12 && monotone &&
                        ratio5 < ratio1 && secs < 10.0,
                    "Q(0) dev " + sci(std::abs(q0 - q0_expect)) + " <= 1e-10, dir spread " + sci(spread) +
                        " < 1e-12, Q0/Q2 " + sci(ratio1) + " -> " + sci(ratio5) + ", " + sci(secs) +
                        " s < 10 s");
    }

    // 6. Gaussian smoothing identity Q = (2/pi) Int W e^{-2|a-b|^2}.
    {
        const cplx pts[] = {{0.0, 0.0}, {0.5, 0.0}, {1.0, 0.5}, {-1.2, 0.3}, {0.0, 1.5}};
        double worst = 0.0;
        const FockDensityOperator vac = thermal_state(0.0, FockCutoff{31}, tol);
        const FockDensityOperator th = thermal_state(1.0, FockCutoff{auto_cutoff(GmmsSpec::thermal(1.0), tol)}, tol);
        const FockDensityOperator cv = cvmms_state(1.0, FockCutoff{auto_cutoff(GmmsSpec::cvmms(1.0), tol)}, tol);
        for (const FockDensityOperator* rho : {&vac, &th, &cv})
            for (cplx beta : pts) worst = std::max(worst, smoothing_check(*rho, beta));
        suite.check("smoothing identity for vacuum, thermal(1), cvmms(1) at 5 points",
                    worst < 1e-6, "max deviation " + sci(worst) + " < 1e-6");
    }

    // 7. Riemann-sum convergence toward the disk integral.
    {
        const FockCutoff cutoff{auto_cutoff(GmmsSpec::cvmms(1.0), tol)};
        const FockDensityOperator target = cvmms_state(1.0, cutoff, tol);
        std::vector<double> dist;
        for (double delta : {0.2, 0.1, 0.05})
            dist.push_back(hs_distance(riemann_gmms(1.0, delta, cutoff, tol), target));
        suite.check("riemann_gmms(1, delta) -> cvmms(1), delta in {0.2,0.1,0.05}",
                    dist[0] > dist[1] && dist[1] > dist[2],
                    "HS dist " + sci(dist[0]) + " > " + sci(dist[1]) + " > " + sci(dist[2]));
    }

    // 8. Squeezed GMMS approaches CVMMS as s -> 0.
    {
        const double b = 1.0;
        const GmmsSpec widest = GmmsSpec::squeezed(b, 0.2, 0.0);
        const FockCutoff cutoff{auto_cutoff(widest, tol)};
        const FockDensityOperator target = cvmms_state(b, cutoff, tol);
        std::vector<double> dist;
        for (double s : {0.2, 0.1, 0.05})
            dist.push_back(hs_distance(quadrature_gmms(b, s, 0.0, cutoff, {}, tol), target));
        const double at_zero = hs_distance(quadrature_gmms(b, 0.0, 0.0, cutoff, {}, tol), target);
        suite.check("squeezed GMMS -> CVMMS as s -> 0 (b = 1)",
                    dist[0] > dist[1] && dist[1] > dist[2] && at_zero <= 1e-8,
                    "HS dist " + sci(dist[0]) + " > " + sci(dist[1]) + " > " + sci(dist[2]) +
                        ", s=0 dist " + sci(at_zero) + " <= 1e-8");
    }

    // 9. HJW ancilla freedom leaves the reduced state alone.
    {
        const FockCutoff cutoff{8};
        std::vector<cplx> coeff(cutoff.dim());
        double norm = 0.0;
        for (int n = 0; n < cutoff.dim(); ++n) {
            coeff[n] = 1.0 / std::sqrt(n + 1.0);
            norm += std::norm(coeff[n]);
        }
        for (cplx& c : coeff) c /= std::sqrt(norm);
        const SchmidtPureState state{cutoff, std::move(coeff)};
        const FockDensityOperator before = reduced_state_A(to_two_mode(state));

        std::mt19937_64 rng(20250810);
        double dev = 0.0;
        for (int trial = 0; trial < 20; ++trial) {
            const AncillaUnitary u = haar_like_unitary(cutoff, rng);
            dev = std::max(dev, max_entry_dev(reduced_state_A(apply_ancilla_unitary(state, u)), before));
        }
        suite.check("HJW freedom: reduced state invariant under 20 random ancilla unitaries",
                    dev <= 1e-12, "max entry dev " + sci(dev) + " <= 1e-12");
    }

    // 10. Entropy ceiling ln(n_max+1); embedded finite MMS hits ln d exactly.
    {
        bool ceiling_ok = true;
        double worst_margin = -1e300;
        const auto probe = [&](const FockDensityOperator& rho) {
            const double margin = entropy(rho, tol) - std::log(static_cast<double>(rho.dim()));
            worst_margin = std::max(worst_margin, margin);
            ceiling_ok &= margin <= 1e-12;
        };
        probe(thermal_state(1.0, FockCutoff{auto_cutoff(GmmsSpec::thermal(1.0), tol)}, tol));
        probe(thermal_state(8.0, FockCutoff{auto_cutoff(GmmsSpec::thermal(8.0), tol)}, tol));
        probe(cvmms_state(2.0, FockCutoff{auto_cutoff(GmmsSpec::cvmms(2.0), tol)}, tol));
        probe(riemann_gmms(1.0, 0.1, FockCutoff{auto_cutoff(GmmsSpec::riemann(1.0, 0.1), tol)}, tol));

        std::vector<double> uniform(16, 1.0 / 16.0);
        const double mms_dev =
            std::abs(entropy(FockDensityOperator::from_diagonal(FockCutoff{15}, uniform, tol), tol) -
                     std::log(16.0));
        suite.check("entropy ceiling ln(n_max+1); finite MMS at d = 16 gives ln 16",
                    ceiling_ok && mms_dev <= 1e-12,
                    "worst ceiling margin " + sci(worst_margin) + " <= 1e-12, ln16 dev " +
                        sci(mms_dev) + " <= 1e-12");
    }

    out << (suite.all() ? "acceptance: all criteria passed\n" : "acceptance: FAILURES present\n");
    return suite.all();
}

} // namespace gmms
