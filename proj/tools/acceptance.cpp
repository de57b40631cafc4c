// Runs the acceptance criteria and prints one line per criterion.
// Usage: acceptance [--json] [--table path] [--threads n] [id ...]
#include "gwpt/checks.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <iomanip>
#include <iostream>

int main(int argc, char** argv)
{
    CLI::App app{"acceptance criteria"};
    std::vector<int> ids;
    std::string table;
    unsigned threads = 0;
    bool json = false;
    app.add_option("ids", ids, "criteria to run (default: all)")->check(CLI::Range(1, gwpt::kCriteria));
    app.add_option("--table", table);
    app.add_option("--threads", threads);
    app.add_flag("--json", json);
    CLI11_PARSE(app, argc, argv);

    if (ids.empty())
        for (int i = 1; i <= gwpt::kCriteria; ++i) ids.push_back(i);

    const auto start = std::chrono::steady_clock::now();
    gwpt::CheckContext ctx = gwpt::default_context(table);
    ctx.threads = threads;
    const auto results = gwpt::run_criteria(ids, ctx);
    const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    if (json) {
        std::cout << gwpt::format_json("acceptance", results);
    } else {
        std::cout << gwpt::format_text(results, true, 300, 4);
        int passed = 0;
        for (const auto& r : results) passed += r.ok;
        std::cout << passed << "/" << results.size() << " criteria pass (" << std::fixed << std::setprecision(1)
                  << total << " s)\n";
    }
    return gwpt::all_ok(results) ? 0 : 1;
}
