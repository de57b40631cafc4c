#pragma once

#include "gwpt/correspondence.hpp"
#include "gwpt/series_data.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <functional>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace gwpt {

struct Failure {
    std::string item;        // the input that failed
    std::string difference;  // exact symbolic difference, never just "false"
};

struct CheckResult {
    std::string id;  // "1" .. "13", "8a", ...
    std::string name;
    bool ok = false;
    std::string summary;
    std::vector<Failure> failures;
    std::vector<CheckResult> parts;
    double seconds = 0;
};

struct CheckContext {
    RingPtr p3;
    CurveClass beta;
    SeriesTable table;
    unsigned threads = 0;  // 0: hardware concurrency
};

CheckContext default_context(const std::string& table_path = "");

unsigned worker_count(unsigned requested);

// Runs fn(i) for i in [0, n) on a worker pool; results keep index order.
template <class T>
std::vector<T> parallel_map(size_t n, unsigned threads, const std::function<T(size_t)>& fn)
{
    std::vector<T> out(n);
    std::atomic<size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto work = [&] {
        for (size_t i; (i = next++) < n;) {
            try {
                out[i] = fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
            }
        }
    };
    const unsigned m = std::min<unsigned>(worker_count(threads), static_cast<unsigned>(std::max<size_t>(n, 1)));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < m; ++t) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
    return out;
}

// Essential intertwining inputs: 1, singletons, pairs and triples as in criteria 5 and 6.
std::vector<PtElement> intertwine_grid(const RingPtr& p3);
CheckResult intertwine_sweep(const CheckContext& ctx, const std::vector<int>& ks, const std::vector<PtElement>& grid);

// (k, D) pairs whose normalized Lcal_k(D) lies in the table, D a sub-monomial of a table key
struct VirasoroIdentity {
    int k = 0;
    PtElement D;
    PtElement normalized;  // bracket-normalized Lcal_k(D)
};
std::vector<VirasoroIdentity> virasoro_identities(const CheckContext& ctx);
CheckResult virasoro_sweep(const CheckContext& ctx);

// number of criteria
inline constexpr int kCriteria = 13;
CheckResult run_criterion(int id, const CheckContext& ctx);
// results in the order of ids, independent of scheduling
std::vector<CheckResult> run_criteria(const std::vector<int>& ids, const CheckContext& ctx);

// one line per result (and per part); failures are listed below their line.
// max_detail clips long differences, max_failures limits the listed failures (0: no limit)
std::string format_text(const std::vector<CheckResult>& results, bool with_time = false, size_t max_detail = 600,
                        size_t max_failures = 12);
// JSON report, see README; timings are left out so the output is stable across runs
std::string format_json(const std::string& command, const std::vector<CheckResult>& results);

bool all_ok(const std::vector<CheckResult>& results);

}  // namespace gwpt
