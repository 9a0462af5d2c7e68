#include "detail/kernel_items.hpp"

namespace parlives::kernels::serial {

ScanResult tsirelson_scan(const ScanGrid& grid) {
    detail::check_grid(grid);
    const detail::TrigTable trig(grid);
    std::vector<ScanResult> rows(detail::scan_rows(grid));
    for (std::size_t r = 0; r < rows.size(); ++r) rows[r] = detail::scan_row(grid, trig, r);
    return detail::best_of(rows);
}

SignSum sample_singlet_correlator(double theta_a, double theta_b, std::uint64_t n, std::uint64_t seed) {
    SignSum total;
    for (std::uint64_t c = 0; c < detail::chunk_count(n); ++c) {
        const auto part = detail::sample_chunk(theta_a, theta_b, n, seed, c);
        total.sum += part.sum;
        total.n += part.n;
    }
    return total;
}

std::vector<lives::ExperimentRecord> run_experiments(const TrialSpec& spec, std::uint64_t seed) {
    detail::check_spec(spec);
    std::vector<lives::ExperimentRecord> out;
    out.reserve(spec.count);
    for (std::size_t i = 0; i < spec.count; ++i) out.push_back(detail::run_trial(spec, seed, i));
    return out;
}

}  // namespace parlives::kernels::serial
