// unital: command-line front end for the unital qubit channel library.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "unital/bloch.hpp"
#include "unital/canonical.hpp"
#include "unital/channel.hpp"
#include "unital/errors.hpp"
#include "unital/json_io.hpp"
#include "unital/mixed_unitary.hpp"

using namespace unital;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNegative = 1;
constexpr int kExitUsage = 2;

struct Config {
    double tolerance = kDefaultTol;
    std::uint64_t seed = 0;
    std::string format = "json";
    std::string output;
};

// Thrown for unreadable files and bad arguments discovered after parsing.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Outcome {
    Json doc;
    int code = kExitOk;
};

std::string num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

bool is_complex(const Json& j) { return j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number(); }

bool is_complex_matrix(const Json& j) {
    if (!j.is_array() || j.empty()) return false;
    for (const auto& row : j) {
        if (!row.is_array() || row.size() != j.size()) return false;
        for (const auto& e : row)
            if (!is_complex(e)) return false;
    }
    return true;
}

std::string complex_text(const Json& z) {
    const double re = z[0].get<double>();
    const double im = z[1].get<double>();
    if (im == 0.0) return num(re);
    std::string s = num(re);
    s += im < 0.0 ? " - " : " + ";
    return s + num(std::abs(im)) + "i";
}

void render_human(const Json& j, const std::string& indent, std::ostream& out);

void render_value(const Json& j, const std::string& indent, std::ostream& out) {
    if (is_complex_matrix(j)) {
        out << "\n";
        for (const auto& row : j) {
            out << indent << "  [";
            for (std::size_t c = 0; c < row.size(); ++c) out << (c ? ", " : "") << complex_text(row[c]);
            out << "]\n";
        }
    } else if (j.is_object() || (j.is_array() && !j.empty() && (j[0].is_object() || j[0].is_array()))) {
        out << "\n";
        render_human(j, indent + "  ", out);
    } else if (j.is_array()) {
        out << " [";
        for (std::size_t k = 0; k < j.size(); ++k) {
            out << (k ? ", " : "");
            if (j[k].is_number()) out << num(j[k].get<double>());
            else out << j[k].dump();
        }
        out << "]\n";
    } else if (j.is_number_float()) {
        out << " " << num(j.get<double>()) << "\n";
    } else if (j.is_string()) {
        out << " " << j.get<std::string>() << "\n";
    } else {
        out << " " << j.dump() << "\n";
    }
}

void render_human(const Json& j, const std::string& indent, std::ostream& out) {
    if (j.is_object()) {
        for (const auto& [key, value] : j.items()) {
            out << indent << key << ":";
            render_value(value, indent, out);
        }
    } else if (j.is_array()) {
        for (std::size_t k = 0; k < j.size(); ++k) {
            out << indent << "[" << k << "]:";
            render_value(j[k], indent, out);
        }
    } else {
        render_value(j, indent, out);
    }
}

void emit(const Config& cfg, const Json& doc) {
    std::ostringstream text;
    if (cfg.format == "human") render_human(doc, "", text);
    else text << doc.dump(2) << "\n";
    if (cfg.output.empty()) {
        std::cout << text.str();
        return;
    }
    std::ofstream f(cfg.output, std::ios::binary);
    if (!f) throw UsageError("cannot write " + cfg.output);
    f << text.str();
}

QubitChannel load_channel(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw UsageError("cannot read " + path);
    std::ostringstream buf;
    buf << f.rdbuf();
    try {
        return parse_channel(buf.str());
    } catch (const Error& e) {
        throw Error(e.code(), path + ": " + e.what());
    }
}

Json validation_json(const ValidationReport& r) {
    Json j;
    j["is_channel"] = r.is_channel();
    j["hermitian_preserving"] = r.hermitian_preserving;
    j["trace_preserving"] = r.trace_preserving;
    j["unital"] = r.unital;
    j["completely_positive"] = r.completely_positive;
    j["hermitian_defect"] = r.hermitian_defect;
    j["trace_defect"] = r.trace_defect;
    j["unital_defect"] = r.unital_defect;
    j["min_choi_eigenvalue"] = r.min_choi_eigenvalue;
    return j;
}

bool is_diagonal(const RealMatrix3& m, double tol) {
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            if (i != j && std::abs(m(i, j)) > tol) return false;
    return true;
}

Outcome cmd_analyze(const Config& cfg, const std::string& path) {
    const QubitChannel ch = load_channel(path);
    const ValidationReport r = validate(ch, cfg.tolerance);
    Outcome o;
    o.doc["validation"] = validation_json(r);
    if (!r.completely_positive) o.doc["not_cp_witness"] = r.min_choi_eigenvalue;
    o.doc["spectrum"] = choi_spectrum(ch, cfg.tolerance).lambdas;
    const BlochAffineForm b = to_bloch(ch);
    if (is_diagonal(b.linear, cfg.tolerance)) {
        const BlochScaling s{{b.linear(0, 0), b.linear(1, 1), b.linear(2, 2)}};
        o.doc["scaling"] = to_json(s);
        const ScalingTest t = is_channel_scaling(s, cfg.tolerance);
        if (t.accepted) o.doc["tetra"] = tetra_coordinates(s, cfg.tolerance).barycentric;
    } else {
        o.doc["bloch_linear"] = matrix_to_json(b.linear);
    }
    o.doc["bloch_offset"] = b.offset;
    o.code = r.is_channel() ? kExitOk : kExitNegative;
    return o;
}

Outcome cmd_canonicalize(const Config& cfg, const std::string& path) {
    return {to_json(canonicalize(load_channel(path), cfg.tolerance)), kExitOk};
}

Outcome cmd_equiv(const Config& cfg, const std::string& a, const std::string& b) {
    const EquivalenceResult e = unitarily_equivalent(load_channel(a), load_channel(b), cfg.tolerance);
    return {to_json(e), e.equivalent ? kExitOk : kExitNegative};
}

Outcome cmd_decompose(const Config& cfg, const std::string& path, const std::vector<double>& weights,
                      int average) {
    if (weights.empty() && average == 0) throw UsageError("decompose needs --weights or --average");
    const QubitChannel ch = load_channel(path);
    UnitaryDecomposition d;
    if (average == 4) {
        d = average_of_four(ch, cfg.tolerance);
    } else if (average > 0) {
        d = decompose(ch, {std::vector<double>(static_cast<std::size_t>(average), 1.0 / average)}, cfg.tolerance);
    } else {
        d = decompose(ch, {weights}, cfg.tolerance);
    }
    return {to_json(d, verify(d, ch, cfg.tolerance).residual), kExitOk};
}

Outcome cmd_bloch(const Config& cfg, const std::vector<double>& values) {
    const BlochScaling s{{values[0], values[1], values[2]}};
    const double tol = cfg.tolerance;
    const ScalingTest t = is_channel_scaling(s, tol);
    Outcome o;
    o.doc["d"] = to_json(s);
    o.doc["channel"] = t.accepted;
    o.doc["witnesses"] = t.witnesses;
    if (t.accepted) o.doc["tetra"] = tetra_coordinates(s, tol).barycentric;

    const BlochScaling rep = ordered_representative(s);
    Json ordered;
    ordered["d"] = to_json(rep);
    ordered["in_cone"] = ordered_cone_test(rep, tol);
    if (ordered["in_cone"].get<bool>()) ordered["cone_coefficients"] = ordered_cone_decomposition(rep, tol).coefficients;
    o.doc["ordered"] = std::move(ordered);
    if (t.accepted) o.doc["spectrum"] = spectrum_from_scaling(s);
    o.code = t.accepted ? kExitOk : kExitNegative;
    return o;
}

Outcome cmd_gen(const Config& cfg, const std::string& kind, const std::vector<double>& coeffs) {
    auto no_coeffs = [&] {
        if (!coeffs.empty()) throw UsageError("gen " + kind + " takes no coefficients");
    };
    if (kind == "random") {
        no_coeffs();
        return {channel_to_json(random_unital_channel(cfg.seed)), kExitOk};
    }
    if (kind == "depolarizing") {
        no_coeffs();
        return {channel_to_json(depolarizing_channel()), kExitOk};
    }
    if (kind == "identity") {
        no_coeffs();
        return {channel_to_json(identity_channel()), kExitOk};
    }
    if (kind == "pauli-mixing") {
        if (coeffs.size() != 4) {
            throw Error(ErrorCode::BadCoefficients, "need 4 coefficients (muI muX muY muZ), got " +
                                                        std::to_string(coeffs.size()));
        }
        double total = 0.0;
        for (double c : coeffs) {
            if (!std::isfinite(c) || c < -cfg.tolerance) {
                throw Error(ErrorCode::BadCoefficients, "coefficients must be finite and nonnegative");
            }
            total += c;
        }
        if (std::abs(total - 1.0) > cfg.tolerance) {
            throw Error(ErrorCode::BadCoefficients, "coefficients sum to " + num(total) + ", not 1");
        }
        return {channel_to_json(PauliMixingForm{{coeffs[0], coeffs[1], coeffs[2], coeffs[3]}}), kExitOk};
    }
    throw UsageError("unknown kind '" + kind + "' (random, depolarizing, identity, pauli-mixing)");
}

Json error_json(const Error& e) {
    Json j;
    j["error"] = std::string(to_string(e.code()));
    j["message"] = e.what();
    if (const auto* nm = dynamic_cast<const NotMajorizedError*>(&e)) {
        j["prefix"] = nm->prefix();
        j["target_sum"] = nm->target_sum();
        j["bound_sum"] = nm->bound_sum();
    }
    if (const auto* np = dynamic_cast<const NotPsdError*>(&e)) j["min_eigenvalue"] = np->min_eigenvalue();
    return j;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Analyze, canonicalize, compare and decompose unital qubit channels."};
    app.require_subcommand(1);
    app.fallthrough();

    Config cfg;
    app.add_option("--tolerance", cfg.tolerance, "Numerical tolerance")->check(CLI::PositiveNumber);
    app.add_option("--seed", cfg.seed, "Seed for generated channels");
    app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "human"}));
    app.add_option("--output", cfg.output, "Write output to this file instead of stdout");

    std::string path_a;
    std::string path_b;
    std::vector<double> weights;
    int average = 0;
    std::vector<double> bloch_values;
    std::string gen_kind;
    std::vector<double> gen_coeffs;

    auto* analyze = app.add_subcommand("analyze", "Validation flags, Choi spectrum and Bloch data");
    analyze->add_option("file", path_a, "Channel document")->required();

    auto* canon = app.add_subcommand("canonicalize", "Local-unitary canonical form with witnesses");
    canon->add_option("file", path_a, "Channel document")->required();

    auto* equiv = app.add_subcommand("equiv", "Decide local unitary equivalence of two channels");
    equiv->add_option("a", path_a, "First channel document")->required();
    equiv->add_option("b", path_b, "Second channel document")->required();

    auto* decomp = app.add_subcommand("decompose", "Mixed-unitary decomposition with prescribed weights");
    decomp->add_option("file", path_a, "Channel document")->required();
    auto* weights_opt = decomp->add_option("--weights", weights, "Comma-separated weights")->delimiter(',');
    auto* average_opt = decomp->add_option("--average", average, "Uniform weights over m unitaries")
                            ->check(CLI::PositiveNumber);
    weights_opt->excludes(average_opt);

    auto* bloch = app.add_subcommand("bloch", "Geometry of a diagonal Bloch scaling (d1, d2, d3)");
    bloch->add_option("d", bloch_values, "d1 d2 d3")->required()->expected(3);

    auto* gen = app.add_subcommand("gen", "Generate a channel document");
    gen->add_option("kind", gen_kind, "random | depolarizing | identity | pauli-mixing")->required();
    gen->add_option("coeffs", gen_coeffs, "Pauli weights muI muX muY muZ");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        Outcome o;
        if (*analyze) o = cmd_analyze(cfg, path_a);
        else if (*canon) o = cmd_canonicalize(cfg, path_a);
        else if (*equiv) o = cmd_equiv(cfg, path_a, path_b);
        else if (*decomp) o = cmd_decompose(cfg, path_a, weights, average);
        else if (*bloch) o = cmd_bloch(cfg, bloch_values);
        else o = cmd_gen(cfg, gen_kind, gen_coeffs);
        emit(cfg, o.doc);
        return o.code;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        if (e.code() == ErrorCode::ParseError) return kExitUsage;
        try {
            emit(cfg, error_json(e));
        } catch (const UsageError& w) {
            std::cerr << "error: " << w.what() << "\n";
            return kExitUsage;
        }
        return kExitNegative;
    }
}
