#include "gmms/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "gmms/errors.hpp"
#include "gmms/kernels.hpp"

namespace gmms {

namespace {

double entropy_of_spectrum(std::span<const double> lambda, double psd_floor) {
    double s = 0.0;
    for (double v : lambda) {
        if (v < -psd_floor)
            throw IntegrityError("entropy: eigenvalue " + std::to_string(v) + " below -psd_floor");
        if (v <= 0.0) continue;  // 0 ln 0 = 0, clamped negatives included
        s -= v * std::log(v);
    }
    return s;
}

} // namespace

double entropy(const FockDensityOperator& rho, const ToleranceProfile& tol) {
    if (rho.is_diagonal()) return entropy_of_spectrum(rho.diagonal(), tol.psd_floor);
    return entropy_of_spectrum(hermitian_eigenvalues(rho), tol.psd_floor);
}

double hs_distance(const FockDensityOperator& a, const FockDensityOperator& b) {
    if (!(a.cutoff() == b.cutoff())) throw DimensionError("hs_distance: cutoff mismatch");
    const double ss = kernels::sum_sq_diff(reinterpret_cast<const double*>(a.entries().data()),
                                           reinterpret_cast<const double*>(b.entries().data()),
                                           2 * a.entries().size());
    return std::sqrt(ss);
}

double purity(const FockDensityOperator& rho) {
    return kernels::sum_sq(reinterpret_cast<const double*>(rho.entries().data()),
                           2 * rho.entries().size());
}

double mean_photon(const FockDensityOperator& rho) {
    const std::vector<double> p = rho.diagonal();
    double acc = 0.0;
    for (std::size_t n = 0; n < p.size(); ++n) acc += static_cast<double>(n) * p[n];
    return acc;
}

StateReport make_report(const FockDensityOperator& rho, const ToleranceProfile& tol) {
    StateReport r;
    r.trace = rho.trace();
    r.entropy_nats = entropy(rho, tol);
    r.purity = purity(rho);
    r.mean_photon = mean_photon(rho);
    r.offdiag_hs_mass = rho.offdiagonal_hs_mass();
    return r;
}

std::vector<ScanRow> entropy_scan(const GmmsSpec& family, std::span<const double> grid,
                                  const ToleranceProfile& tol, const QuadratureSpec& quad) {
    // Shared cutoff adequate for every grid point keeps entropies comparable.
    int n_max = 0;
    std::vector<GmmsSpec> specs;
    specs.reserve(grid.size());
    for (double v : grid) {
        GmmsSpec spec = family;
        if (family.kind == GmmsSpec::Kind::thermal)
            spec = GmmsSpec::thermal(v);
        else if (family.kind == GmmsSpec::Kind::cvmms)
            spec = GmmsSpec::cvmms(v);
        else if (family.kind == GmmsSpec::Kind::squeezed)
            spec = GmmsSpec::squeezed(v, family.s, family.phi);
        else
            spec = GmmsSpec::riemann(v, family.delta);
        n_max = std::max(n_max, auto_cutoff(spec, tol));
        specs.push_back(spec);
    }

    std::vector<ScanRow> rows;
    rows.reserve(grid.size());
    for (std::size_t i = 0; i < specs.size(); ++i) {
        const FockDensityOperator rho = make_state(specs[i], FockCutoff{n_max}, tol, quad);
        rows.push_back({grid[i], entropy(rho, tol), rho.trace(), mean_photon(rho)});
    }
    return rows;
}

} // namespace gmms
