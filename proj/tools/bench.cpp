/* Compares the serial reference implementations against the OpenMP
   kernels on the heavy sweeps. */

#include <chrono>
#include <iomanip>
#include <iostream>

#include "fnops/kernels.hpp"

using namespace fnops;
using clk = std::chrono::steady_clock;

static double run_ms(const std::function<void()>& f) {
    auto t0 = clk::now();
    f();
    auto t1 = clk::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

static void row(const std::string& name, double serial_ms, double parallel_ms) {
    std::cout << std::left << std::setw(38) << name << std::right << std::fixed
              << std::setprecision(1) << std::setw(10) << serial_ms << " ms"
              << std::setw(10) << parallel_ms << " ms   x" << std::setprecision(2)
              << (parallel_ms > 0 ? serial_ms / parallel_ms : 0.0) << "\n";
}

int main() {
    std::cout << std::left << std::setw(38) << "kernel" << std::right << std::setw(13)
              << "serial" << std::setw(13) << "openmp" << "   speedup\n";

    {
        auto gens = labeled_basis(6, 6, 0);
        bool s_ok = true, p_ok = true;
        double s = run_ms([&] { s_ok = d2_zero_sweep(gens, ExecMode::Serial); });
        double p = run_ms([&] { p_ok = d2_zero_sweep(gens, ExecMode::Parallel); });
        row("d^2 sweep, n=6 dim=6 (" + std::to_string(gens.size()) + " gens)", s, p);
        if (!s_ok || !p_ok) std::cout << "  !! sweep failed\n";
    }
    {
        auto gens = labeled_basis(5, 6, 0);
        double s = run_ms([&] { route_agreement_sweep(gens, ExecMode::Serial); });
        double p = run_ms([&] { route_agreement_sweep(gens, ExecMode::Parallel); });
        row("route agreement, n=5 dim=6 (" + std::to_string(gens.size()) + ")", s, p);
    }
    {
        auto upper = labeled_basis(5, 5, 0);
        auto lower = labeled_basis(5, 4, 0);
        std::map<std::string, int> index;
        for (size_t i = 0; i < lower.size(); ++i) index.emplace(lower[i].barcode(), (int)i);
        double s = run_ms([&] {
            boundary_matrix(upper, index, (int)lower.size(), ExecMode::Serial);
        });
        double p = run_ms([&] {
            boundary_matrix(upper, index, (int)lower.size(), ExecMode::Parallel);
        });
        row("boundary matrix, n=5 d=5 -> d=4", s, p);
    }
    {
        double s = run_ms([&] { build_G_complex(4, Height::of(3), 9, ExecMode::Serial); });
        double p = run_ms([&] { build_G_complex(4, Height::of(3), 9, ExecMode::Parallel); });
        row("full complex build, n=4 h=3", s, p);
    }
    return 0;
}
