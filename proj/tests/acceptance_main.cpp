// Acceptance suite driver: runs the numbered criteria and prints one
// pass/fail line per criterion. Exit status 0 iff all requested pass.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>

#include "cuspsum/acceptance.hpp"

int main(int argc, char** argv) {
    CLI::App app{"acceptance criteria runner"};
    std::vector<int> ids;
    std::string cache, cli;
    int threads = 4;
    app.add_option("--criterion", ids, "criterion id (repeatable; default all)");
    app.add_option("--cache", cache, "coefficient cache file (loaded or created)");
    app.add_option("--cli", cli, "path to the cuspsum binary for CLI checks");
    app.add_option("--threads", threads);
    CLI11_PARSE(app, argc, argv);

    if (ids.empty()) ids = cuspsum::all_acceptance_ids();

    try {
        long long needed = cuspsum::acceptance_required_n_max(ids);
        cuspsum::CoefficientTable table;
        if (!cache.empty() && std::filesystem::exists(cache)) {
            table = cuspsum::load_cache(cache);
            if (table.n_max < needed) {
                std::fprintf(stderr,
                             "cache has n_max=%lld but criteria need %lld; "
                             "regenerating\n",
                             table.n_max, needed);
                table = cuspsum::generate_delta_coefficients(needed);
                if (!cache.empty()) cuspsum::save_cache(table, cache);
            }
        } else {
            table = cuspsum::generate_delta_coefficients(needed);
            if (!cache.empty()) cuspsum::save_cache(table, cache);
        }

        cuspsum::AcceptanceContext ctx;
        ctx.table = &table;
        ctx.threads = threads;
        ctx.cli_path = cli;

        auto results = cuspsum::run_acceptance(ids, ctx);
        int failures = 0;
        for (const auto& r : results) {
            std::cout << cuspsum::format_result_line(r) << "\n";
            if (!r.pass) ++failures;
        }
        std::cout.flush();
        return failures == 0 ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "acceptance runner error: " << e.what() << "\n";
        return 3;
    }
}
