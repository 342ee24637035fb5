#include "mhdq/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace mhdq {

namespace {
constexpr std::size_t leaf_size = 256;

double pairwise(std::span<const double> partials)
{
    if (partials.empty()) return 0.0;
    if (partials.size() == 1) return partials[0];
    const std::size_t mid = partials.size() / 2;
    return pairwise(partials.first(mid)) + pairwise(partials.subspan(mid));
}
}  // namespace

int default_workers()
{
    if (const char* env = std::getenv("MHDQ_THREADS")) {
        try {
            return std::max(0, std::stoi(env));
        } catch (...) {
            return 0;
        }
    }
    return int(std::max(1u, std::thread::hardware_concurrency()));
}

void parallel_for(int begin, int end, int workers, const std::function<void(int)>& body)
{
    const int count = end - begin;
    if (count <= 0) return;
    if (workers <= 1 || count == 1) {
        for (int k = begin; k < end; ++k) body(k);
        return;
    }
    const int nthreads = std::min(workers, count);
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(nthreads));
    {
        std::vector<std::jthread> threads;
        threads.reserve(std::size_t(nthreads));
        for (int t = 0; t < nthreads; ++t) {
            const int lo = begin + int((long long)count * t / nthreads);
            const int hi = begin + int((long long)count * (t + 1) / nthreads);
            threads.emplace_back([lo, hi, &body, &err = errors[std::size_t(t)]] {
                try {
                    for (int k = lo; k < hi; ++k) body(k);
                } catch (...) {
                    err = std::current_exception();
                }
            });
        }
    }
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

double tree_sum(std::span<const double> values, int workers)
{
    const std::size_t nblocks = (values.size() + leaf_size - 1) / leaf_size;
    std::vector<double> partials(nblocks, 0.0);
    parallel_for(0, int(nblocks), workers, [&](int b) {
        const auto block = values.subspan(std::size_t(b) * leaf_size,
                                          std::min(leaf_size, values.size() - std::size_t(b) * leaf_size));
        partials[std::size_t(b)] = serial_sum(block);
    });
    return pairwise(partials);
}

double serial_sum(std::span<const double> values)
{
    double s = 0.0;
    for (double v : values) s += v;
    return s;
}

}  // namespace mhdq
