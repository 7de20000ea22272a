#include "majorization.hpp"

#include <algorithm>
#include <cmath>

#include "errors.hpp"

namespace spinalign {

std::vector<double> ky_fan_sums(const Spectrum& spec) { return spec.kyfan; }

MajorizationReport majorized_by_spectra(const Spectrum& x, const Spectrum& y, double tol,
                                        bool weak) {
    if (x.size() != y.size())
        throw DimensionError("majorized_by: spectra have different dimensions");

    MajorizationReport report;
    report.tol = tol;
    report.weak = weak;
    report.gaps.resize(x.size());
    report.worst_gap = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < x.size(); ++k) {
        const double gap = x.kyfan[k] - y.kyfan[k];
        report.gaps[k] = gap;
        report.worst_gap = std::max(report.worst_gap, gap);
        if (gap > tol && !report.first_violation) report.first_violation = k + 1;
    }
    report.trace_mismatch = std::abs(x.sum() - y.sum());
    report.holds = report.worst_gap <= tol && (weak || report.trace_mismatch <= tol);
    return report;
}

MajorizationReport majorized_by(const ComplexMatrix& x, const ComplexMatrix& y, double tol,
                                bool weak) {
    if (x.dim() != y.dim())
        throw DimensionError("majorized_by: matrices have different dimensions");
    return majorized_by_spectra(hermitian_eigenvalues(x), hermitian_eigenvalues(y), tol, weak);
}

}  // namespace spinalign
