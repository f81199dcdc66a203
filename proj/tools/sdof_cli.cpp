// Command-line front end: GSVD decomposition, s.d.o.f. region computation,
// converse certification, recursive cover tables and power sweeps, with JSON
// and CSV input/output.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "sdof/certifier.hpp"
#include "sdof/rate_eval.hpp"
#include "sdof/reduction.hpp"

namespace {

using sdof::json;

constexpr int kExitOk = 0;
constexpr int kExitVerdictFailed = 1;
constexpr int kExitUsage = 2;

std::string read_input(const std::optional<std::string>& path) {
    if (!path) {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream f(*path);
    if (!f) throw std::runtime_error("cannot open input file: " + *path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void write_output(const std::optional<std::string>& path, const std::string& data) {
    if (!path) {
        std::cout << data;
        return;
    }
    std::ofstream f(*path);
    if (!f) throw std::runtime_error("cannot open output file: " + *path);
    f << data;
}

struct DimFlags {
    long r0 = -1, r1 = -1, r2 = -1, ne = 0;
    long nt1 = -1, nt2 = -1, nr = -1;

    // Explicit ranks win; otherwise derive generic ranks from antenna counts.
    std::tuple<long, long, long> resolve() const {
        if (r0 >= 0 || r1 >= 0 || r2 >= 0) {
            if (r0 < 0 || r1 < 0 || r2 < 0)
                throw sdof::InvalidDims("provide all of --r0 --r1 --r2");
            return {r0, r1, r2};
        }
        if (nt1 < 0 || nt2 < 0 || nr < 0)
            throw sdof::InvalidDims("provide --r0 --r1 --r2 or --nt1 --nt2 --nr");
        return {std::min(nt1 + nt2, nr), std::min(nt1, nr), std::min(nt2, nr)};
    }
};

void add_dim_flags(CLI::App* app, DimFlags& d) {
    app->add_option("--r0", d.r0, "rank of [H1|H2]");
    app->add_option("--r1", d.r1, "rank of H1");
    app->add_option("--r2", d.r2, "rank of H2");
    app->add_option("--ne", d.ne, "eavesdropper antennas")->check(CLI::NonNegativeNumber);
    app->add_option("--nt1", d.nt1, "transmit antennas, user 1 (generic ranks)");
    app->add_option("--nt2", d.nt2, "transmit antennas, user 2 (generic ranks)");
    app->add_option("--nr", d.nr, "receiver antennas (generic ranks)");
}

std::string cover_table(const sdof::RecursiveCover& c) {
    std::ostringstream os;
    os << "|F|=" << c.f_size << " |G|=" << c.g_size << "\n";
    os << "i\tF_i\tH_i\tV_i\tc_i\n";
    os << "0\t-\t-\t" << sdof::detail::set_name(c.v_sets[0]) << "\t" << c.counters[0] << "\n";
    for (long i = 1; i <= c.g_size; ++i) {
        os << i << "\t" << sdof::detail::set_name(c.f_sets[i - 1]) << "\t"
           << (c.h_sets[i - 1].empty() ? std::string("-")
                                       : sdof::detail::set_name(c.h_sets[i - 1]))
           << "\t" << sdof::detail::set_name(c.v_sets[i]) << "\t" << c.counters[i] << "\n";
    }
    return os.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"s.d.o.f. region toolkit for the two-user MIMO-MAC wiretap channel "
                 "with an arbitrarily varying eavesdropper"};
    app.require_subcommand(1);

    std::optional<std::string> input_path, output_path, csv_path;
    double tol = 1e-10;

    // decompose
    auto* dec = app.add_subcommand("decompose",
                                   "GSVD of a channel pair; emits factors and parallel model");
    long dec_ne = 0;
    dec->add_option("-i,--input", input_path, "JSON file with {h1, h2[, n_e]} (default stdin)");
    dec->add_option("-o,--output", output_path, "output file (default stdout)");
    dec->add_option("--ne", dec_ne, "eavesdropper antennas")->check(CLI::NonNegativeNumber);
    dec->add_option("--tol", tol, "rank tolerance")->check(CLI::PositiveNumber);

    // region
    auto* reg = app.add_subcommand("region", "exact s.d.o.f. region for a rank profile");
    DimFlags reg_dims;
    add_dim_flags(reg, reg_dims);
    reg->add_option("-o,--output", output_path, "output file (default stdout)");
    reg->add_option("--csv", csv_path, "also write hull vertices as CSV");

    // certify
    auto* cert = app.add_subcommand("certify",
                                    "certify achievable == outer bound; exit 1 on failure");
    DimFlags cert_dims;
    add_dim_flags(cert, cert_dims);
    long sweep_max = -1;
    cert->add_option("--sweep-max", sweep_max,
                     "certify every antenna profile in [0,N]^4 with generic ranks");
    cert->add_option("-o,--output", output_path, "output file (default stdout)");

    // cover
    auto* cov = app.add_subcommand("cover", "recursive eavesdropper cover table");
    long cov_f = 0, cov_g = 0;
    cov->add_option("--f", cov_f, "|F|")->required();
    cov->add_option("--g", cov_g, "|G|")->required();
    cov->add_option("-o,--output", output_path, "output file (default stdout)");

    // sweep
    auto* swp = app.add_subcommand("sweep", "power sweep on a parallel model; emits CSV");
    std::string target = "p3";
    long swp_t1 = 0, swp_t2 = 0;
    double lo_log2 = 20.0, hi_log2 = 40.0, step_log2 = 4.0, eps = 1.0, norm_bound = 1.0;
    swp->add_option("-i,--input", input_path, "ParallelModel JSON (default stdin)");
    swp->add_option("-o,--output", output_path, "output file (default stdout)");
    swp->add_option("--target", target, "p3 | p4 | custom")
        ->check(CLI::IsMember({"p3", "p4", "custom"}));
    swp->add_option("--t1", swp_t1, "user 1 dimensions (custom target)");
    swp->add_option("--t2", swp_t2, "user 2 dimensions (custom target)");
    swp->add_option("--pmin-log2", lo_log2, "log2 of smallest power");
    swp->add_option("--pmax-log2", hi_log2, "log2 of largest power");
    swp->add_option("--pstep-log2", step_log2, "log2 step")->check(CLI::PositiveNumber);
    swp->add_option("--eps", eps, "leakage regularizer")->check(CLI::PositiveNumber);
    swp->add_option("--norm-bound", norm_bound, "eavesdropper spectral norm bound")
        ->check(CLI::PositiveNumber);

    CLI11_PARSE(app, argc, argv);

    try {
        if (dec->parsed()) {
            const json in = json::parse(read_input(input_path));
            const auto h1 = sdof::matrix_from_json(in.at("h1"));
            const auto h2 = sdof::matrix_from_json(in.at("h2"));
            const long ne = in.contains("n_e") && dec->count("--ne") == 0
                                ? in.at("n_e").get<long>()
                                : dec_ne;
            const auto g = sdof::gsvd(h1, h2, tol);
            json out;
            out["gsvd"] = sdof::gsvd_to_json(g);
            out["parallel"] = sdof::parallel_to_json(sdof::to_parallel(g, ne));
            write_output(output_path, out.dump(2) + "\n");
            return kExitOk;
        }
        if (reg->parsed()) {
            const auto [r0, r1, r2] = reg_dims.resolve();
            const auto region = sdof::sdof_region(r0, r1, r2, reg_dims.ne);
            write_output(output_path, sdof::region_to_json(region).dump(2) + "\n");
            if (csv_path) write_output(csv_path, sdof::region_vertices_csv(region));
            return kExitOk;
        }
        if (cert->parsed()) {
            bool all_true = true;
            json out;
            if (sweep_max >= 0) {
                out = json::array();
                for (long nt1 = 0; nt1 <= sweep_max; ++nt1)
                    for (long nt2 = 0; nt2 <= sweep_max; ++nt2)
                        for (long nr = 0; nr <= sweep_max; ++nr)
                            for (long ne = 0; ne <= sweep_max; ++ne) {
                                const auto c = sdof::certify(std::min(nt1 + nt2, nr),
                                                             std::min(nt1, nr),
                                                             std::min(nt2, nr), ne);
                                all_true = all_true && c.verdict;
                                out.push_back(sdof::certificate_to_json(c));
                            }
            } else {
                const auto [r0, r1, r2] = cert_dims.resolve();
                const auto c = sdof::certify(r0, r1, r2, cert_dims.ne);
                all_true = c.verdict;
                out = sdof::certificate_to_json(c);
            }
            write_output(output_path, out.dump(2) + "\n");
            return all_true ? kExitOk : kExitVerdictFailed;
        }
        if (cov->parsed()) {
            write_output(output_path, cover_table(sdof::build_cover(cov_f, cov_g)));
            return kExitOk;
        }
        if (swp->parsed()) {
            const auto model = sdof::parallel_from_json(json::parse(read_input(input_path)));
            sdof::SignalingScheme scheme;
            if (target == "p3")
                scheme = sdof::allocate(model, sdof::AllocationTarget::P3);
            else if (target == "p4")
                scheme = sdof::allocate(model, sdof::AllocationTarget::P4);
            else
                scheme = sdof::allocate(model, sdof::AllocationTarget::Custom, swp_t1, swp_t2);
            const auto result = sdof::sweep(model, scheme,
                                            sdof::default_powers(lo_log2, hi_log2, step_log2),
                                            norm_bound, eps);
            write_output(output_path, sdof::sweep_to_csv(result));
            return kExitOk;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
