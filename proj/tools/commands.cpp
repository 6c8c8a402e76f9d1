#include "commands.hpp"

#include <cmath>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <Eigen/Eigenvalues>
#include <json.hpp>

#include "entprod/decoherence.hpp"
#include "entprod/ising_register.hpp"
#include "entprod/measure.hpp"
#include "entprod/spinor.hpp"
#include "entprod/states.hpp"
#include "statefile.hpp"

namespace entprod::cli {

namespace {

struct GlobalOptions {
    std::string log_base = "e";

    LogBase base() const {
        return log_base == "2" ? LogBase::base2 : LogBase::natural;
    }
    double convert(double natural_value) const {
        return in_base(natural_value, base());
    }
};

// data sink: --out FILE or the provided stream
class Output {
public:
    Output(const std::string& path, std::ostream& fallback) {
        if (path.empty()) {
            stream_ = &fallback;
            return;
        }
        file_.open(path);
        if (!file_) throw ValidationError("cannot open output file: " + path);
        stream_ = &file_;
    }
    std::ostream& stream() { return *stream_; }

private:
    std::ofstream file_;
    std::ostream* stream_ = nullptr;
};

std::vector<double> parse_number_list(const std::string& text,
                                      const char* what) {
    std::vector<double> values;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            values.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw ValidationError(std::string("invalid ") + what + " entry: '" +
                                  item + "'");
        }
    }
    if (values.empty())
        throw ValidationError(std::string("empty ") + what + " list");
    return values;
}

// coefficient entries are "re" or "re:im"
std::vector<Complex> parse_coefficients(const std::string& text) {
    std::vector<Complex> values;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto colon = item.find(':');
        try {
            if (colon == std::string::npos) {
                values.emplace_back(std::stod(item), 0.0);
            } else {
                values.emplace_back(std::stod(item.substr(0, colon)),
                                    std::stod(item.substr(colon + 1)));
            }
        } catch (const std::exception&) {
            throw ValidationError("invalid coefficient entry: '" + item + "'");
        }
    }
    if (values.empty()) throw ValidationError("empty coefficient list");
    return values;
}

ising::SweepRange parse_range(const std::string& text) {
    // grammar: lo:hi:steps
    const auto first = text.find(':');
    const auto second = text.find(':', first + 1);
    if (first == std::string::npos || second == std::string::npos)
        throw ValidationError("range syntax is lo:hi:steps, got '" + text + "'");
    try {
        ising::SweepRange r;
        r.lo = std::stod(text.substr(0, first));
        r.hi = std::stod(text.substr(first + 1, second - first - 1));
        const long steps = std::stol(text.substr(second + 1));
        if (steps < 1) throw std::invalid_argument("steps");
        r.steps = static_cast<std::size_t>(steps);
        return r;
    } catch (const ValidationError&) {
        throw;
    } catch (const std::exception&) {
        throw ValidationError("range syntax is lo:hi:steps, got '" + text + "'");
    }
}

const char* log_base_label(const GlobalOptions& g) {
    return g.log_base == "2" ? "2" : "e";
}

// ---------------------------------------------------------------------------
// measure
// ---------------------------------------------------------------------------

struct MeasureArgs {
    std::string state_path;
    std::string partition_text;
    std::string out_path;
};

int cmd_measure(const MeasureArgs& args, const GlobalOptions& g,
                std::ostream& out) {
    const StateFile file = load_state_file(args.state_path);
    const SpaceLayout layout(file.dims);
    const DenseOperator op(layout, file.matrix);

    Partition partition = [&] {
        if (!args.partition_text.empty())
            return parse_partition(args.partition_text, layout.factor_count());
        if (file.partition)
            return Partition(*file.partition, layout.factor_count());
        throw ValidationError(
            "no partition: provide --partition or store one in the file");
    }();

    const MeasureReport rep = entanglement_production(op, partition, g.base());

    const Matrix& m = file.matrix;
    const bool hermitian = is_hermitian(m);
    const bool trace_one = std::abs(m.trace() - Complex(1.0)) <= tol::trace_one;
    bool psd = false;
    if (hermitian) {
        Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (m + m.adjoint()),
                                                 Eigen::EigenvaluesOnly);
        psd = es.eigenvalues().minCoeff() >= -tol::psd;
    }

    nlohmann::json j;
    j["epsilon"] = rep.epsilon;
    j["log_base"] = log_base_label(g);
    j["norms"] = {{"operator", rep.norm_numerator},
                  {"nonentangling", rep.norm_denominator}};
    j["per_block_norms"] = rep.per_block_norms;
    j["validation"] = {{"hermitian", hermitian},
                       {"trace", trace_one},
                       {"psd", psd}};
    Output sink(args.out_path, out);
    sink.stream() << j.dump(2) << '\n';
    return 0;
}

// ---------------------------------------------------------------------------
// states
// ---------------------------------------------------------------------------

struct StatesArgs {
    std::string kind;
    int n = 2;
    std::string sign = "+";
    std::string coeffs;
    std::string weights;
    int modes = 0;
    std::string out_path;
};

int cmd_states(const StatesArgs& args, const GlobalOptions& g,
               std::ostream& out) {
    const int sign = [&] {
        if (args.sign == "+") return +1;
        if (args.sign == "-") return -1;
        throw ValidationError("--sign must be + or -");
    }();

    states::NamedState spec = [&] {
        if (args.kind == "epr") return states::NamedState::epr(sign);
        if (args.kind == "bell") return states::NamedState::bell(sign);
        if (args.kind == "ghz") return states::NamedState::ghz(args.n, sign);
        if (args.kind == "multicat") {
            const auto c = parse_coefficients(args.coeffs);
            if (c.size() != 2)
                throw ValidationError("multicat takes exactly two coefficients");
            return states::NamedState::multicat(args.n, c[0], c[1]);
        }
        if (args.kind == "multimode") {
            const auto c = parse_coefficients(args.coeffs);
            if (args.modes > 0 &&
                static_cast<std::size_t>(args.modes) != c.size())
                throw ValidationError("--m disagrees with the coefficient count");
            return states::NamedState::multimode(args.n, c);
        }
        if (args.kind == "separable")
            return states::NamedState::separable(
                args.n, parse_number_list(args.weights, "weight"));
        throw ValidationError("unknown state kind: " + args.kind);
    }();
    if ((args.kind == "epr" || args.kind == "bell") && args.n != 2)
        throw ValidationError("EPR/Bell states are two-party");

    const auto built = states::build(spec);
    const double epsilon = states::closed_form_measure(spec, g.base());

    StateFile file;
    file.dims = built.rho.layout().dims();
    file.matrix = built.rho.matrix();
    file.partition = built.partition.blocks();
    const std::string path =
        args.out_path.empty() ? args.kind + ".state.json" : args.out_path;
    save_state_file(path, file);

    nlohmann::json j;
    j["kind"] = args.kind;
    j["n_parties"] = spec.n_parties;
    j["epsilon"] = epsilon;
    j["log_base"] = log_base_label(g);
    j["file"] = path;
    out << j.dump(2) << '\n';
    return 0;
}

// ---------------------------------------------------------------------------
// gibbs2q
// ---------------------------------------------------------------------------

struct Gibbs2qArgs {
    std::string coupling;
    std::string t_range;
    std::string h_range;
    bool asymptotics = false;
    std::string out_path;
};

int cmd_gibbs2q(const Gibbs2qArgs& args, const GlobalOptions& g,
                std::ostream& out) {
    const ising::Coupling coupling = [&] {
        if (args.coupling == "ferro") return ising::Coupling::ferro;
        if (args.coupling == "antiferro") return ising::Coupling::antiferro;
        throw ValidationError("--coupling must be ferro or antiferro");
    }();
    const auto rows =
        ising::sweep(parse_range(args.t_range), parse_range(args.h_range),
                     coupling);

    const bool ferro = coupling == ising::Coupling::ferro;
    const auto regimes =
        ferro ? std::vector<ising::Regime>{ising::Regime::ferro_low_temperature,
                                           ising::Regime::ferro_small_field,
                                           ising::Regime::ferro_high_temperature,
                                           ising::Regime::ferro_large_field}
              : std::vector<ising::Regime>{
                    ising::Regime::antiferro_low_temperature,
                    ising::Regime::antiferro_small_field,
                    ising::Regime::antiferro_high_temperature,
                    ising::Regime::antiferro_large_field};

    Output sink(args.out_path, out);
    std::ostream& os = sink.stream();
    os << "T,h,epsilon";
    if (args.asymptotics)
        os << ",epsilon_low_T,epsilon_small_h,epsilon_high_T,epsilon_large_h";
    os << '\n';
    for (const auto& row : rows) {
        os << csv_number(row.temperature) << ',' << csv_number(row.field)
           << ',' << csv_number(g.convert(row.epsilon));
        if (args.asymptotics)
            for (const auto regime : regimes)
                os << ','
                   << csv_number(g.convert(ising::asymptotic_measure(
                          regime, {row.temperature, row.field, coupling})));
        os << '\n';
    }
    return 0;
}

// ---------------------------------------------------------------------------
// decohere
// ---------------------------------------------------------------------------

struct DecohereArgs {
    std::string spec_path;
    double t_max = 1.0;
    std::size_t steps = 2;
    std::string mode = "exact";
    std::string out_path;
};

struct DecohereSpecFile {
    decoherence::BipartiteSpec spec;
    std::optional<decoherence::LorentzSpec> gamma_a;
    std::optional<decoherence::LorentzSpec> gamma_b;
};

DecohereSpecFile load_decohere_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open spec file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError("spec file is not valid JSON: " +
                              std::string(e.what()));
    }
    for (const char* key : {"dim_a", "dim_b", "energies", "rho0_re", "rho0_im"})
        if (!j.contains(key))
            throw ValidationError(std::string("spec file: missing ") + key);

    const auto dim_a = j["dim_a"].get<std::size_t>();
    const auto dim_b = j["dim_b"].get<std::size_t>();
    if (dim_a < 1 || dim_b < 1)
        throw ValidationError("spec file: dimensions must be positive");

    const auto read_matrix = [&](const char* key, std::size_t rows,
                                 std::size_t cols) {
        const auto& node = j[key];
        if (!node.is_array() || node.size() != rows)
            throw ValidationError(std::string("spec file: ") + key +
                                  " has wrong shape");
        Eigen::MatrixXd m(static_cast<Eigen::Index>(rows),
                          static_cast<Eigen::Index>(cols));
        for (std::size_t r = 0; r < rows; ++r) {
            const auto& row = node[r];
            if (!row.is_array() || row.size() != cols)
                throw ValidationError(std::string("spec file: ") + key +
                                      " has wrong shape");
            for (std::size_t c = 0; c < cols; ++c)
                m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                    row[c].get<double>();
        }
        return m;
    };

    const std::size_t d = dim_a * dim_b;
    const Eigen::MatrixXd energies = read_matrix("energies", dim_a, dim_b);
    const Eigen::MatrixXd re = read_matrix("rho0_re", d, d);
    const Eigen::MatrixXd im = read_matrix("rho0_im", d, d);
    const Matrix rho =
        re.cast<Complex>() + Complex(0.0, 1.0) * im.cast<Complex>();

    DecohereSpecFile result{
        decoherence::BipartiteSpec(
            dim_a, dim_b, energies,
            DensityOperator(DenseOperator(SpaceLayout({dim_a, dim_b}), rho))),
        std::nullopt, std::nullopt};

    if (j.contains("gamma")) {
        const double rate = j["gamma"].get<double>();
        result.gamma_a = decoherence::LorentzSpec::uniform(dim_a, rate);
        result.gamma_b = decoherence::LorentzSpec::uniform(dim_b, rate);
    }
    if (j.contains("gamma_a"))
        result.gamma_a = decoherence::LorentzSpec(
            read_matrix("gamma_a", dim_a, dim_a));
    if (j.contains("gamma_b"))
        result.gamma_b = decoherence::LorentzSpec(
            read_matrix("gamma_b", dim_b, dim_b));
    return result;
}

int cmd_decohere(const DecohereArgs& args, const GlobalOptions& g,
                 std::ostream& out) {
    if (args.mode != "exact" && args.mode != "lorentz")
        throw ValidationError("--mode must be exact or lorentz");
    if (args.steps < 1) throw ValidationError("--steps must be at least 1");
    if (args.t_max < 0.0) throw ValidationError("--t-max must be nonnegative");

    const DecohereSpecFile file = load_decohere_spec(args.spec_path);

    std::vector<double> times;
    if (args.steps == 1) {
        times.push_back(0.0);
    } else {
        for (std::size_t i = 0; i < args.steps; ++i)
            times.push_back(args.t_max * static_cast<double>(i) /
                            static_cast<double>(args.steps - 1));
    }

    std::vector<decoherence::TrajectoryPoint> traj;
    if (args.mode == "exact") {
        traj = decoherence::measure_trajectory(file.spec, times, g.base());
    } else {
        if (!file.gamma_a || !file.gamma_b)
            throw ValidationError(
                "lorentz mode needs gamma (or gamma_a/gamma_b) in the spec");
        traj = decoherence::measure_trajectory_lorentz(
            file.spec, *file.gamma_a, *file.gamma_b, times, g.base());
    }
    const auto limits = decoherence::limit_measures(file.spec, g.base());

    Output sink(args.out_path, out);
    std::ostream& os = sink.stream();
    os << "t,epsilon\n";
    for (const auto& pt : traj)
        os << csv_number(pt.time) << ',' << csv_number(pt.epsilon) << '\n';
    os << "# eps0=" << csv_number(limits.eps0)
       << " eps_inf=" << csv_number(limits.eps_inf) << '\n';
    return 0;
}

// ---------------------------------------------------------------------------
// spinor
// ---------------------------------------------------------------------------

struct SpinorArgs {
    long n = 0;
    bool table = false;
    bool oracle = false;
    double s = -1.0, sz = 0.0, iz = 0.0;
    bool have_s = false;
    std::string out_path;
};

int cmd_spinor_spin_spatial(const SpinorArgs& args, const GlobalOptions& g,
                            std::ostream& out) {
    if (args.n < 1) throw ValidationError("--n must be positive");
    Output sink(args.out_path, out);
    std::ostream& os = sink.stream();
    os << "N,S,epsilon_spin_spatial\n";
    for (long two_s = args.n % 2; two_s <= args.n; two_s += 2) {
        const double s = 0.5 * static_cast<double>(two_s);
        const double eps = g.convert(spinor::spin_spatial_measure(
            spinor::YoungDiagram::spin_half(args.n, s)));
        os << args.n << ',' << quantum_number(s) << ',' << csv_number(eps)
           << '\n';
    }
    return 0;
}

int cmd_spinor_particle(const SpinorArgs& args, const GlobalOptions& g,
                        std::ostream& out, std::ostream& err) {
    if (args.n < 1) throw ValidationError("--n must be positive");
    if (args.oracle && args.n > 6)
        throw ValidationError("--oracle supports N <= 6 only");
    if (!args.table && !args.have_s)
        throw ValidationError("particle needs --s/--sz/--iz or --table");

    std::vector<spinor::SpinHalfState> cases;
    if (args.table) {
        for (long two_s = args.n % 2; two_s <= args.n; two_s += 2)
            for (long two_sz = -two_s; two_sz <= two_s; two_sz += 2)
                for (long two_iz = -two_s; two_iz <= two_s; two_iz += 2)
                    cases.emplace_back(args.n, 0.5 * two_s, 0.5 * two_sz,
                                       0.5 * two_iz);
    } else {
        cases.emplace_back(args.n, args.s, args.sz, args.iz);
    }

    Output sink(args.out_path, out);
    std::ostream& os = sink.stream();
    os << "N,S,Sz,Iz,epsilon_particle";
    if (args.oracle) os << ",oracle_epsilon";
    os << '\n';
    for (const auto& state : cases) {
        os << state.n() << ',' << quantum_number(state.s()) << ','
           << quantum_number(state.sz()) << ',' << quantum_number(state.iz())
           << ',' << csv_number(g.convert(spinor::particle_measure(state)));
        if (args.oracle) {
            try {
                os << ','
                   << csv_number(g.convert(
                          spinor::brute_force_particle_measure(state)));
            } catch (const OracleError& e) {
                os << ",nan";
                err << "oracle skipped (N=" << state.n()
                    << " S=" << quantum_number(state.s())
                    << " Sz=" << quantum_number(state.sz())
                    << " Iz=" << quantum_number(state.iz()) << "): " << e.what()
                    << '\n';
            }
        }
        os << '\n';
    }
    return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
    CLI::App app{"entanglement-production measure toolkit"};
    app.require_subcommand(1);

    GlobalOptions global;
    app.add_option("--log-base", global.log_base,
                   "logarithm base for all entropic outputs (e or 2)")
        ->check(CLI::IsMember({"e", "2"}))
        ->capture_default_str();

    MeasureArgs measure_args;
    auto* measure = app.add_subcommand(
        "measure", "entanglement production of an operator from a state file");
    measure->add_option("state", measure_args.state_path, "state file (JSON)")
        ->required();
    measure->add_option("--partition", measure_args.partition_text,
                        "factor partition, e.g. \"0,1|2,3\"");
    measure->add_option("--out", measure_args.out_path, "write report here");

    StatesArgs states_args;
    auto* states_cmd = app.add_subcommand(
        "states", "generate a named state file and print its closed-form value");
    states_cmd
        ->add_option("--kind", states_args.kind,
                     "epr|bell|ghz|multicat|multimode|separable")
        ->required()
        ->check(CLI::IsMember(
            {"epr", "bell", "ghz", "multicat", "multimode", "separable"}));
    states_cmd->add_option("--n", states_args.n, "number of parties");
    states_cmd->add_option("--sign", states_args.sign,
                           "superposition sign (+ or -)");
    states_cmd->add_option("--coeffs", states_args.coeffs,
                           "comma-separated coefficients, re or re:im");
    states_cmd->add_option("--weights", states_args.weights,
                           "comma-separated mixture weights");
    states_cmd->add_option("--m", states_args.modes,
                           "mode count (multimode; must match --coeffs)");
    states_cmd->add_option("--out", states_args.out_path,
                           "state file path (default <kind>.state.json)");

    Gibbs2qArgs gibbs_args;
    auto* gibbs = app.add_subcommand(
        "gibbs2q", "two-qubit register sweep over temperature and field");
    gibbs->add_option("--coupling", gibbs_args.coupling, "ferro|antiferro")
        ->required()
        ->check(CLI::IsMember({"ferro", "antiferro"}));
    gibbs->add_option("--t-range", gibbs_args.t_range, "lo:hi:steps")
        ->required();
    gibbs->add_option("--h-range", gibbs_args.h_range, "lo:hi:steps")
        ->required();
    gibbs->add_flag("--asymptotics", gibbs_args.asymptotics,
                    "append the per-regime expansion columns");
    gibbs->add_option("--out", gibbs_args.out_path, "write CSV here");

    DecohereArgs deco_args;
    auto* deco = app.add_subcommand(
        "decohere", "bipartite dephasing trajectory of the measure");
    deco->add_option("--spec", deco_args.spec_path, "spec file (JSON)")
        ->required();
    deco->add_option("--t-max", deco_args.t_max, "final time")->required();
    deco->add_option("--steps", deco_args.steps, "number of samples")
        ->required();
    deco->add_option("--mode", deco_args.mode, "exact|lorentz")
        ->check(CLI::IsMember({"exact", "lorentz"}))
        ->capture_default_str();
    deco->add_option("--out", deco_args.out_path, "write CSV here");

    SpinorArgs spinor_args;
    auto* spinor_cmd =
        app.add_subcommand("spinor", "multiparticle spinor measure tables");
    spinor_cmd->require_subcommand(1);
    auto* spin_spatial = spinor_cmd->add_subcommand(
        "spin-spatial", "spin-spatial measure for every total spin");
    spin_spatial->add_option("--n", spinor_args.n, "particle count")
        ->required();
    spin_spatial->add_option("--out", spinor_args.out_path, "write CSV here");

    auto* particle = spinor_cmd->add_subcommand(
        "particle", "particle-partition measure for given quantum numbers");
    particle->add_option("--n", spinor_args.n, "particle count")->required();
    auto* s_opt = particle->add_option("--s", spinor_args.s, "total spin S");
    particle->add_option("--sz", spinor_args.sz, "spin projection Sz");
    particle->add_option("--iz", spinor_args.iz, "orbital projection Iz");
    particle->add_flag("--table", spinor_args.table,
                       "emit every valid (S, Sz, Iz) row");
    particle->add_flag("--oracle", spinor_args.oracle,
                       "append the brute-force cross-check column (N <= 6)");
    particle->add_option("--out", spinor_args.out_path, "write CSV here");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }

    spinor_args.have_s = s_opt->count() > 0;

    try {
        if (*measure) return cmd_measure(measure_args, global, out);
        if (*states_cmd) return cmd_states(states_args, global, out);
        if (*gibbs) return cmd_gibbs2q(gibbs_args, global, out);
        if (*deco) return cmd_decohere(deco_args, global, out);
        if (*spinor_cmd) {
            if (*spin_spatial)
                return cmd_spinor_spin_spatial(spinor_args, global, out);
            return cmd_spinor_particle(spinor_args, global, out, err);
        }
        err << "error: no command selected\n";
        return 2;
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const ZeroTraceError& e) {
        err << "error: " << e.what() << '\n';
        return 3;
    } catch (const ImpossibleOutcomeError& e) {
        err << "error: " << e.what() << '\n';
        return 3;
    } catch (const OracleError& e) {
        err << "error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 3;
    }
}

}  // namespace entprod::cli
