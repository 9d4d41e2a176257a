// Times the OpenMP kernels against their serial references.

#include "tautrel/relgen.hpp"
#include "tautrel/verify.hpp"

#include <omp.h>

#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <string>
#include <vector>

using namespace tautrel;

namespace {

double seconds(const std::function<void()>& f, int reps)
{
    const auto start = std::chrono::steady_clock::now();
    for (int i = 0; i < reps; ++i)
        f();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() / reps;
}

void row(const std::string& name, double serial, double parallel)
{
    std::cout << std::left << std::setw(44) << name << std::right << std::fixed << std::setprecision(4)
              << std::setw(10) << serial << std::setw(10) << parallel << std::setw(8) << std::setprecision(2)
              << serial / parallel << "x\n";
}

} // namespace

// usage: bench_multiply [repetitions] [large]
int main(int argc, char** argv)
{
    const int reps = argc > 1 ? std::atoi(argv[1]) : 3;
    std::cout << "threads: " << omp_get_max_threads() << ", repetitions: " << reps << "\n";
    std::cout << std::left << std::setw(44) << "kernel" << std::right << std::setw(10) << "serial" << std::setw(10)
              << "omp" << std::setw(9) << "speedup\n";

    std::vector<RelationSpec> specs{{0, 6, 2, {1, 1, 1, 1, 1, 1}, 3}, {1, 3, 2, {1, 1, 0}, 3}};
    if (argc > 2 && std::string(argv[2]) == "large")
        specs.push_back({0, 7, 2, {1, 1, 1, 1, 1, 1, 0}, 4}); // about 30 s per cold product on one core
    for (const RelationSpec& s : specs) {
        MultiplyOptions opts;
        opts.max_degree = s.d;
        // ch1^2 times ch1^(d-2): the longest product chain in a relation of degree d
        const TautExpr ch1 = bracket(s, 1);
        TautExpr b1 = multiply(ch1, ch1, opts), b2 = ch1;
        for (int k = 1; k < s.d - 2; ++k)
            b2 = multiply(b2, ch1, opts);
        clear_product_cache();
        TautExpr serial_result = multiply_serial(b1, b2, opts);
        clear_product_cache();
        if (!(serial_result == multiply(b1, b2, opts))) {
            std::cerr << "multiply and multiply_serial disagree\n";
            return 1;
        }
        // cold cache: every stratum product is recomputed
        auto cold = [&](auto kernel) {
            return seconds([&] {
                clear_product_cache();
                kernel(b1, b2, opts);
            }, reps);
        };
        row("multiply ch1^2*ch1^" + std::to_string(s.d - 2) + " (" + std::to_string(s.g) + "," + std::to_string(s.n) + ")",
            cold([](auto&... x) { return multiply_serial(x...); }), cold([](auto&... x) { return multiply(x...); }));

        TautExpr rel = pushforward_relation(s);
        VerifyOptions serial_opts, parallel_opts;
        serial_opts.parallel = false;
        row("verify_relation (" + std::to_string(s.g) + "," + std::to_string(s.n) + ",d=" + std::to_string(s.d) + ")",
            seconds([&] { verify_relation(s, rel, serial_opts); }, reps),
            seconds([&] { verify_relation(s, rel, parallel_opts); }, reps));
    }
    return 0;
}
