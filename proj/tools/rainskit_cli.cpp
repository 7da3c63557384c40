// rainskit command line: SDP entanglement measures and strong-converse
// capacity bounds for states and channels supplied as JSON.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rainskit/amortization.hpp"
#include "rainskit/channels.hpp"
#include "rainskit/emax.hpp"
#include "rainskit/json_io.hpp"
#include "rainskit/linalg.hpp"
#include "rainskit/rains.hpp"

using namespace rainskit;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitSolver = 2;
constexpr int kExitViolation = 3;

struct CommonOpts {
    std::string input_path;
    std::string out_path;  // empty = stdout
    double tol = 1e-8;
    bool tol_from_flag = false;
};

void apply_env_tol(CommonOpts& c) {
    if (c.tol_from_flag) return;  // flag wins over environment
    if (const char* env = std::getenv("RAINSKIT_TOL")) {
        try {
            c.tol = std::stod(env);
        } catch (...) {
            throw std::invalid_argument("RAINSKIT_TOL is not a number");
        }
    }
}

void require_tol(double tol) {
    if (!(tol >= 1e-12 && tol <= 1e-4))
        throw std::invalid_argument("tolerance must lie in [1e-12, 1e-4]");
}

void emit(const CommonOpts& c, const std::string& text) {
    if (c.out_path.empty()) {
        std::cout << text << "\n";
        return;
    }
    std::ofstream out(c.out_path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot open output path: " + c.out_path);
    out << text << "\n";
}

std::string measure_json(const std::string& command, const MeasureResult& r,
                         std::optional<bool> exact_flag) {
    JsonWriter w;
    w.begin_object();
    w.field("command", command);
    w.field("value", r.value);
    w.field("log2_value", r.log2_value);
    w.field_interval("certificate_interval", r.cert.lower, r.cert.upper);
    w.begin_object_field("residuals");
    w.field("primal", r.cert.primal_residual);
    w.field("dual", r.cert.dual_residual);
    w.field("min_eig_x", r.cert.min_eig_x);
    w.field("min_eig_s", r.cert.min_eig_s);
    w.end_object();
    w.field("iterations", r.cert.iterations);
    if (exact_flag) w.field("exact", *exact_flag);
    w.end_object();
    return w.str();
}

Bipartition cut_from_leading(const DimSpec& dims, int leading_a) {
    if (leading_a < 1 || leading_a >= dims.count())
        throw std::invalid_argument("cut must leave factors on both sides");
    Bipartition cut;
    for (int k = leading_a; k < dims.count(); ++k) cut.b_side.push_back(k);
    return cut;
}

SepConeMode parse_mode(const std::string& mode) {
    if (mode == "exact") return SepConeMode::ExactSmallDims;
    if (mode == "ppt-relax") return SepConeMode::PptRelaxation;
    throw std::invalid_argument("mode must be exact or ppt-relax");
}

std::vector<double> parse_grid(const std::string& grid) {
    std::vector<double> vals;
    std::string token;
    for (char ch : grid + ",") {
        if (ch == ',') {
            if (!token.empty()) {
                vals.push_back(std::stod(token));
                token.clear();
            }
        } else {
            token += ch;
        }
    }
    if (vals.empty()) throw std::invalid_argument("empty grid");
    return vals;
}

Channel family_channel(const std::string& family, double p) {
    if (family == "depolarizing") return make_depolarizing(2, p);
    if (family == "erasure") return make_erasure(2, p);
    if (family == "dephasing") return make_dephasing(p);
    if (family == "amplitude-damping") return make_amplitude_damping(p);
    throw std::invalid_argument("unknown family: " + family);
}

int run_state_measure(const CommonOpts& c, int cut, const std::string& command,
                      std::optional<SepConeMode> mode) {
    apply_env_tol(const_cast<CommonOpts&>(c));
    require_tol(c.tol);
    const BipartiteState rho = load_state_file(c.input_path);
    SdpOptions opts;
    opts.tol = c.tol;
    const Bipartition bp = cut_from_leading(rho.dims, cut);
    if (mode) {
        const MeasureResult r = w_sep(rho, bp, *mode, opts);
        emit(c, measure_json(command, r, r.exact));
    } else {
        const MeasureResult r = w_state(rho, bp, opts);
        emit(c, measure_json(command, r, std::nullopt));
    }
    return kExitOk;
}

int run_channel_measure(const CommonOpts& c, const std::string& command,
                        std::optional<SepConeMode> mode, bool qtheta_cmd) {
    apply_env_tol(const_cast<CommonOpts&>(c));
    require_tol(c.tol);
    const Channel n = load_channel_file(c.input_path);
    SdpOptions opts;
    opts.tol = c.tol;
    if (qtheta_cmd) {
        const MeasureResult r = transposed_diamond_norm(n, opts);
        emit(c, measure_json(command, r, std::nullopt));
    } else if (mode) {
        const MeasureResult r = sigma_channel(n, *mode, opts);
        emit(c, measure_json(command, r, r.exact));
    } else {
        const MeasureResult r = gamma_channel(n, opts);
        emit(c, measure_json(command, r, std::nullopt));
    }
    return kExitOk;
}

struct AmortInstance {
    bool solved = false;
    std::string error;
    double margin = 0.0, construction_margin = 0.0, scale = 1.0;
    double w_input = 0.0, gamma = 0.0, w_output = 0.0, pair_objective = 0.0;
    double e_min_eig = 0.0, f_min_eig = 0.0, constraint_min_eig = 0.0;
    bool pass = false;
};

int run_verify_amortization(CommonOpts& c, int trials, uint64_t seed,
                            const std::string& dims_text) {
    apply_env_tol(c);
    require_tol(c.tol);
    std::vector<int> dims;
    for (double v : parse_grid(dims_text)) dims.push_back(static_cast<int>(v));
    if (dims.size() != 3) throw std::invalid_argument("--dims must have three factors A',A,B'");
    const DimSpec rho_dims{dims};
    if (rho_dims.total() > 16)
        throw std::invalid_argument("dims exceed the desk-scale gate (product <= 16)");
    if (trials < 1) throw std::invalid_argument("--trials must be >= 1");
    SdpOptions opts;
    opts.tol = c.tol;

    std::vector<AmortInstance> inst(static_cast<size_t>(trials));
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (int i = 0; i < trials; ++i) {
        AmortInstance& a = inst[static_cast<size_t>(i)];
        try {
            const uint64_t s = seed + 7919ull * static_cast<uint64_t>(i);
            const Channel n = random_channel(dims[1], dims[1], 2, s);
            const BipartiteState rho = random_state(rho_dims, s + 1);
            const AmortizationReport rep = verify_amortization(n, rho, opts);
            a.solved = true;
            a.margin = rep.margin;
            a.construction_margin = rep.construction_margin;
            a.scale = rep.scale;
            a.w_input = rep.w_input.value;
            a.gamma = rep.gamma.value;
            a.w_output = rep.w_output.value;
            a.pair_objective = rep.pair_objective;
            a.e_min_eig = rep.e_min_eig;
            a.f_min_eig = rep.f_min_eig;
            a.constraint_min_eig = rep.constraint_min_eig;
            a.pass = rep.margin >= -1e-6 * rep.scale &&
                     rep.construction_margin >= -1e-6 * rep.scale &&
                     rep.w_output.value <= rep.pair_objective + 1e-6 * rep.scale &&
                     rep.e_min_eig >= -1e-8 * rep.scale && rep.f_min_eig >= -1e-8 * rep.scale &&
                     rep.constraint_min_eig >= -1e-8 * rep.scale;
        } catch (const std::exception& e) {
            a.error = e.what();
        }
    }

    for (const auto& a : inst)
        if (!a.solved) throw SolverFailure(SdpStatus::NumericalTrouble, a.error);

    bool all_pass = true;
    double min_margin = std::numeric_limits<double>::infinity();
    int passed = 0;
    for (const auto& a : inst) {
        all_pass = all_pass && a.pass;
        min_margin = std::min(min_margin, a.margin / a.scale);
        passed += a.pass ? 1 : 0;
    }

    JsonWriter w;
    w.begin_object();
    w.field("command", std::string("verify-amortization"));
    w.field("trials", static_cast<long>(trials));
    w.field("seed", static_cast<long>(seed));
    w.begin_array("instances");
    for (const auto& a : inst) {
        w.begin_object_in_array();
        w.field("w_input", a.w_input);
        w.field("gamma", a.gamma);
        w.field("w_output", a.w_output);
        w.field("pair_objective", a.pair_objective);
        w.field("margin", a.margin);
        w.field("construction_margin", a.construction_margin);
        w.field("scale", a.scale);
        w.field("e_min_eig", a.e_min_eig);
        w.field("f_min_eig", a.f_min_eig);
        w.field("constraint_min_eig", a.constraint_min_eig);
        w.field("pass", a.pass);
        w.end_object();
    }
    w.end_array();
    w.field("passed", static_cast<long>(passed));
    w.field("min_relative_margin", min_margin);
    w.field("all_pass", all_pass);
    w.end_object();
    emit(c, w.str());
    return all_pass ? kExitOk : kExitViolation;
}

struct SweepRow {
    double param = 0.0;
    double r_max = 0.0, e_max = 0.0, q_theta_v = 0.0, ceiling = 0.0;
    bool solved = false;
    std::string error;
};

int run_sweep(CommonOpts& c, const std::string& family, const std::string& grid_text) {
    apply_env_tol(c);
    require_tol(c.tol);
    std::vector<double> grid = parse_grid(grid_text);
    std::sort(grid.begin(), grid.end());
    family_channel(family, grid.front());  // reject unknown families and bad params up front
    SdpOptions opts;
    opts.tol = c.tol;

    std::vector<SweepRow> rows(grid.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (int i = 0; i < static_cast<int>(grid.size()); ++i) {
        SweepRow& row = rows[static_cast<size_t>(i)];
        row.param = grid[static_cast<size_t>(i)];
        try {
            const Channel n = family_channel(family, row.param);
            row.r_max = r_max_channel(n, opts);
            row.e_max = e_max_channel(n, SepConeMode::ExactSmallDims, opts);
            row.q_theta_v = q_theta(n, opts);
            // Strong-converse fidelity ceiling at n = 10 uses, rate Q = 1.
            row.ceiling = std::min(1.0, std::pow(2.0, -10.0 * (1.0 - row.r_max)));
            row.solved = true;
        } catch (const std::exception& e) {
            row.error = e.what();
        }
    }
    for (const auto& row : rows)
        if (!row.solved) throw SolverFailure(SdpStatus::NumericalTrouble, row.error);

    std::string csv = "# rainskit sweep csv v1\n";
    csv += "family,param,r_max,e_max,q_theta,converse_fidelity_ceiling_n10_Q1";
    for (const auto& row : rows) {
        csv += "\n" + family + "," + format_real(row.param) + "," + format_real(row.r_max) + "," +
               format_real(row.e_max) + "," + format_real(row.q_theta_v) + "," +
               format_real(row.ceiling);
    }
    emit(c, csv);

    if (family == "erasure") {  // monotone family assertion
        for (size_t i = 1; i < rows.size(); ++i)
            if (rows[i].r_max > rows[i - 1].r_max + 1e-6) return kExitViolation;
    }
    return kExitOk;
}

int run_converse(CommonOpts& c, int n_uses, long m, double epsilon) {
    apply_env_tol(c);
    require_tol(c.tol);
    if (!(epsilon >= 0.0 && epsilon < 1.0))
        throw std::invalid_argument("epsilon must lie in [0, 1)");
    const Channel n = load_channel_file(c.input_path);
    SdpOptions opts;
    opts.tol = c.tol;
    const double r_max = r_max_channel(n, opts);
    const ConverseBound cb = strong_converse_bound(n_uses, m, epsilon, r_max);
    JsonWriter w;
    w.begin_object();
    w.field("command", std::string("converse"));
    w.field("n", static_cast<long>(n_uses));
    w.field("M", m);
    w.field("epsilon", epsilon);
    w.field("r_max_channel", r_max);
    w.field("bound_holds", cb.bound_holds);
    w.field("qubit_rate", cb.qubit_rate);
    w.field("fidelity_ceiling", cb.fidelity_ceiling);
    w.end_object();
    emit(c, w.str());
    return kExitOk;
}

int run_protocol(CommonOpts& c, int rounds, uint64_t seed) {
    apply_env_tol(c);
    require_tol(c.tol);
    if (rounds < 1 || rounds > 4)
        throw std::invalid_argument("--rounds must lie in [1, 4] at desk scale");
    const Channel n = c.input_path.empty() ? make_identity(2) : load_channel_file(c.input_path);
    SdpOptions opts;
    opts.tol = c.tol;
    const ProtocolTranscript t = build_random_transcript(n, rounds, seed);
    const ProtocolCheck chk = run_protocol_and_check(t, opts);

    JsonWriter w;
    w.begin_object();
    w.field("command", std::string("protocol"));
    w.field("rounds", static_cast<long>(rounds));
    w.field("seed", static_cast<long>(seed));
    w.field("r_channel", chk.r_channel);
    w.begin_array("rounds_data");
    for (int i = 0; i < rounds; ++i) {
        w.begin_object_in_array();
        w.field("r_rho", chk.r_rho[static_cast<size_t>(i)]);
        w.field("r_sigma", chk.r_sigma[static_cast<size_t>(i)]);
        w.end_object();
    }
    w.end_array();
    w.field("final_r", chk.final_r);
    w.field("measured_epsilon", chk.measured_epsilon);
    w.field("transcript_consistent", chk.transcript_consistent);
    w.field("initial_ppt_ok", chk.initial_ppt_ok);
    w.field("monotone_ok", chk.monotone_ok);
    w.field("per_round_gain_ok", chk.per_round_gain_ok);
    w.field("final_bound_ok", chk.final_bound_ok);
    w.field("converse_arithmetic_ok", chk.converse_arithmetic_ok);
    w.field("all_ok", chk.all_ok);
    w.end_object();
    emit(c, w.str());
    return chk.all_ok ? kExitOk : kExitViolation;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"SDP entanglement measures and strong-converse capacity bounds"};
    app.require_subcommand(1);

    CommonOpts common;
    int cut = 1;
    std::string mode_text = "exact";
    int trials = 50;
    uint64_t seed = 0;
    std::string dims_text = "2,2,2";
    std::string family, grid_text = "0,0.5,1";
    int n_uses = 1;
    long m_dim = 2;
    double epsilon = 0.0;
    int rounds = 2;

    auto add_common = [&](CLI::App* sub, bool needs_input) {
        auto* t = sub->add_option("--tol", common.tol, "solver tolerance (default 1e-8)");
        t->each([&](const std::string&) { common.tol_from_flag = true; });
        sub->add_option("--out", common.out_path, "write the report here instead of stdout");
        if (needs_input)
            sub->add_option("--input", common.input_path, "input JSON path")->required();
    };

    auto* s_rains = app.add_subcommand("state-rains", "max-Rains relative entropy of a state");
    add_common(s_rains, true);
    s_rains->add_option("--cut", cut, "leading factors on the A side (default 1)");

    auto* s_emax = app.add_subcommand("state-emax", "max-relative entropy of entanglement");
    add_common(s_emax, true);
    s_emax->add_option("--cut", cut, "leading factors on the A side (default 1)");
    s_emax->add_option("--mode", mode_text, "exact | ppt-relax");

    auto* c_rains = app.add_subcommand("channel-rains", "max-Rains information of a channel");
    add_common(c_rains, true);

    auto* c_emax = app.add_subcommand("channel-emax", "max-relative entropy of entanglement of a channel");
    add_common(c_emax, true);
    c_emax->add_option("--mode", mode_text, "exact | ppt-relax");

    auto* c_qtheta = app.add_subcommand("qtheta", "partial transposition bound log2 ||T o N||_diamond");
    add_common(c_qtheta, true);

    auto* v_amort = app.add_subcommand("verify-amortization",
                                       "random-instance campaign for the amortization inequality");
    add_common(v_amort, false);
    v_amort->add_option("--trials", trials, "number of random instances");
    v_amort->add_option("--seed", seed, "base seed");
    v_amort->add_option("--dims", dims_text, "A',A,B' factor dims (default 2,2,2)");

    auto* sweep = app.add_subcommand("sweep", "channel-family sweep to CSV");
    add_common(sweep, false);
    sweep->add_option("--family", family, "depolarizing | erasure | dephasing | amplitude-damping")
        ->required();
    sweep->add_option("--grid", grid_text, "comma-separated parameter values");

    auto* conv = app.add_subcommand("converse", "strong-converse bound arithmetic for a channel");
    add_common(conv, false);
    conv->add_option("--channel", common.input_path, "channel JSON path")->required();
    conv->add_option("--n", n_uses, "channel uses")->required();
    conv->add_option("--M", m_dim, "maximally entangled target dimension")->required();
    conv->add_option("--epsilon", epsilon, "infidelity in [0,1)")->required();

    auto* proto = app.add_subcommand("protocol", "random assisted protocol transcript check");
    add_common(proto, false);
    proto->add_option("--channel", common.input_path, "channel JSON (default: identity qubit)");
    proto->add_option("--rounds", rounds, "rounds (<= 4)");
    proto->add_option("--seed", seed, "transcript seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInput;
    }

    try {
        if (s_rains->parsed()) return run_state_measure(common, cut, "state-rains", std::nullopt);
        if (s_emax->parsed())
            return run_state_measure(common, cut, "state-emax", parse_mode(mode_text));
        if (c_rains->parsed()) return run_channel_measure(common, "channel-rains", std::nullopt, false);
        if (c_emax->parsed())
            return run_channel_measure(common, "channel-emax", parse_mode(mode_text), false);
        if (c_qtheta->parsed()) return run_channel_measure(common, "qtheta", std::nullopt, true);
        if (v_amort->parsed()) return run_verify_amortization(common, trials, seed, dims_text);
        if (sweep->parsed()) return run_sweep(common, family, grid_text);
        if (conv->parsed()) return run_converse(common, n_uses, m_dim, epsilon);
        if (proto->parsed()) return run_protocol(common, rounds, seed);
    } catch (const SolverFailure& e) {
        std::cerr << "solver failure: " << e.what() << "\n";
        return kExitSolver;
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitInput;
}
