#include <omp.h>

#include "detail/kernel_items.hpp"

namespace parlives::kernels::parallel {

int max_threads() { return omp_get_max_threads(); }

ScanResult tsirelson_scan(const ScanGrid& grid) {
    detail::check_grid(grid);
    const detail::TrigTable trig(grid);
    std::vector<ScanResult> rows(detail::scan_rows(grid));
    const auto n = static_cast<std::int64_t>(rows.size());
#pragma omp parallel for schedule(static)
    for (std::int64_t r = 0; r < n; ++r) rows[r] = detail::scan_row(grid, trig, static_cast<std::size_t>(r));
    return detail::best_of(rows);
}

SignSum sample_singlet_correlator(double theta_a, double theta_b, std::uint64_t n, std::uint64_t seed) {
    const auto chunks = static_cast<std::int64_t>(detail::chunk_count(n));
    std::int64_t sum = 0;
    std::uint64_t count = 0;
#pragma omp parallel for schedule(static) reduction(+ : sum, count)
    for (std::int64_t c = 0; c < chunks; ++c) {
        const auto part = detail::sample_chunk(theta_a, theta_b, n, seed, static_cast<std::uint64_t>(c));
        sum += part.sum;
        count += part.n;
    }
    return SignSum{sum, count};
}

std::vector<lives::ExperimentRecord> run_experiments(const TrialSpec& spec, std::uint64_t seed) {
    detail::check_spec(spec);
    std::vector<lives::ExperimentRecord> out(spec.count);
    const auto n = static_cast<std::int64_t>(spec.count);
#pragma omp parallel for schedule(dynamic, 8)
    for (std::int64_t i = 0; i < n; ++i) out[i] = detail::run_trial(spec, seed, static_cast<std::uint64_t>(i));
    return out;
}

}  // namespace parlives::kernels::parallel
