#include <nclab/distance_profile.hpp>

#include <fftw3.h>

#include <bit>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>

namespace nclab {

namespace {
    // Planner calls are not thread-safe in FFTW; execution with the new-array interface is.
    struct PlanPair {
        fftw_plan forward = nullptr;
        fftw_plan backward = nullptr;
    };

    std::mutex plan_mutex;

    PlanPair plans_for(std::size_t size)
    {
        static std::map<std::size_t, PlanPair> cache;
        std::lock_guard lock(plan_mutex);
        auto it = cache.find(size);
        if (it != cache.end())
            return it->second;

        double * real = fftw_alloc_real(size);
        fftw_complex * spectrum = fftw_alloc_complex(size / 2 + 1);
        PlanPair p;
        p.forward = fftw_plan_dft_r2c_1d(static_cast<int>(size), real, spectrum, FFTW_ESTIMATE);
        p.backward = fftw_plan_dft_c2r_1d(static_cast<int>(size), spectrum, real, FFTW_ESTIMATE);
        fftw_free(real);
        fftw_free(spectrum);
        cache.emplace(size, p);
        return p;
    }

    struct FftwDeleter {
        void operator()(void * p) const noexcept { fftw_free(p); }
    };

    constexpr std::size_t pairwise_limit = 2048;
    constexpr Point direct_board_limit = 4096;
}

std::vector<std::uint64_t> distance_counts_direct(const PointSet & a)
{
    const Point n = a.board_size();
    std::vector<std::uint64_t> counts(static_cast<std::size_t>(std::max<Point>(n, 1)), 0);
    if (n == 0)
        return counts;
    counts[0] = a.size();
    for (Point d = 1; d < n; ++d)
        counts[static_cast<std::size_t>(d)] = a.pairs_at_distance(d);
    return counts;
}

std::vector<std::uint64_t> distance_counts_fft(const PointSet & a)
{
    const Point n = a.board_size();
    std::vector<std::uint64_t> counts(static_cast<std::size_t>(std::max<Point>(n, 1)), 0);
    if (n == 0)
        return counts;

    const std::size_t size = std::bit_ceil(static_cast<std::size_t>(2 * n));
    const PlanPair plans = plans_for(size);

    std::unique_ptr<double, FftwDeleter> real(fftw_alloc_real(size));
    std::unique_ptr<fftw_complex, FftwDeleter> spectrum(fftw_alloc_complex(size / 2 + 1));
    std::fill(real.get(), real.get() + size, 0.0);
    a.for_each([&](Point x) { real.get()[x - 1] = 1.0; });

    fftw_execute_dft_r2c(plans.forward, real.get(), spectrum.get());
    for (std::size_t i = 0; i < size / 2 + 1; ++i) {
        auto & c = spectrum.get()[i];
        c[0] = c[0] * c[0] + c[1] * c[1];
        c[1] = 0.0;
    }
    fftw_execute_dft_c2r(plans.backward, spectrum.get(), real.get());

    const double scale = 1.0 / static_cast<double>(size);
    for (Point d = 0; d < n; ++d)
        counts[static_cast<std::size_t>(d)] = static_cast<std::uint64_t>(std::llround(real.get()[d] * scale));
    return counts;
}

std::vector<std::uint64_t> distance_counts(const PointSet & a)
{
    const Point n = a.board_size();
    const std::size_t m = a.size();
    if (m <= pairwise_limit) {
        std::vector<std::uint64_t> counts(static_cast<std::size_t>(std::max<Point>(n, 1)), 0);
        const auto pts = a.points();
        for (std::size_t i = 0; i < pts.size(); ++i)
            for (std::size_t j = i + 1; j < pts.size(); ++j)
                ++counts[static_cast<std::size_t>(pts[j] - pts[i])];
        if (n > 0)
            counts[0] = m;
        return counts;
    }
    if (n <= direct_board_limit)
        return distance_counts_direct(a);
    return distance_counts_fft(a);
}

} // namespace nclab
