#pragma once

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>

#include <json.hpp>

#include "ritzsym/bounds.hpp"
#include "ritzsym/errors.hpp"
#include "ritzsym/quadrature.hpp"
#include "ritzsym/symmetry.hpp"

namespace ritzsym {

// ---------------------------------------------------------------------------
// Deterministic serialization: keys sorted (nlohmann::json objects iterate
// in key order), every float printed with 17 significant digits, no locale
// dependence. CSV floats use scientific notation for lossless round-trips.
// ---------------------------------------------------------------------------

inline std::string format_g17(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string format_e17(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.16e", v);
    return buf;
}

namespace detail {
inline void dump_json(const nlohmann::json& j, std::string& out, int indent, int depth) {
    const std::string pad(static_cast<std::size_t>(indent) * depth, ' ');
    const std::string pad_in(static_cast<std::size_t>(indent) * (depth + 1), ' ');
    switch (j.type()) {
        case nlohmann::json::value_t::object: {
            if (j.empty()) {
                out += "{}";
                return;
            }
            out += "{\n";
            bool first = true;
            for (auto it = j.cbegin(); it != j.cend(); ++it) {
                if (!first) out += ",\n";
                first = false;
                out += pad_in + nlohmann::json(it.key()).dump() + ": ";
                dump_json(it.value(), out, indent, depth + 1);
            }
            out += "\n" + pad + "}";
            return;
        }
        case nlohmann::json::value_t::array: {
            if (j.empty()) {
                out += "[]";
                return;
            }
            out += "[\n";
            bool first = true;
            for (const auto& el : j) {
                if (!first) out += ",\n";
                first = false;
                out += pad_in;
                dump_json(el, out, indent, depth + 1);
            }
            out += "\n" + pad + "]";
            return;
        }
        case nlohmann::json::value_t::number_float:
            out += format_g17(j.get<double>());
            return;
        default:
            out += j.dump();
            return;
    }
}
}  // namespace detail

// nlohmann's default printer emits shortest-round-trip floats; reports pin
// the 17-significant-digit form instead.
inline std::string json_dump_deterministic(const nlohmann::json& j) {
    std::string out;
    detail::dump_json(j, out, 2, 0);
    out += "\n";
    return out;
}

// Write via a temp file in the same directory, then rename into place.
inline void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
    namespace fs = std::filesystem;
    fs::path dir = path.has_parent_path() ? path.parent_path() : fs::path(".");
    std::error_code ec;
    fs::create_directories(dir, ec);

    thread_local std::mt19937_64 rng{std::random_device{}()};
    fs::path tmp = dir / (path.filename().string() + ".tmp" + std::to_string(rng()));
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw IoError("cannot open for writing: " + tmp.string());
        out << content;
        if (!out) throw IoError("write failed: " + tmp.string());
    }
    fs::rename(tmp, path, ec);
    if (ec) {
        fs::remove(tmp);
        throw IoError("cannot rename " + tmp.string() + " to " + path.string() + ": " +
                      ec.message());
    }
}

// ---------------------------------------------------------------------------
// JSON pieces of the run reports.
// ---------------------------------------------------------------------------

inline nlohmann::json rule_to_json(const QuadratureRule& rule) {
    nlohmann::json j;
    j["nodes"] = rule.nodes;
    j["weights"] = rule.weights;
    return j;
}

inline nlohmann::json tridiagonal_to_json(const TridiagonalMatrix& t) {
    nlohmann::json j;
    j["alphas"] = t.alphas;
    j["betas"] = t.betas;
    return j;
}

inline nlohmann::json symmetry_report_to_json(const SymmetryReport& rep) {
    nlohmann::json j;
    j["condition_evaluated"] = rep.condition_evaluated;
    if (rep.condition_evaluated) {
        j["spectrum_symmetric"] = rep.spectrum_symmetric;
        if (rep.spectrum_center) j["spectrum_center"] = *rep.spectrum_center;
        j["mu_palindrome"] = rep.mu_palindrome;
        j["mu_palindrome_deviation"] = rep.mu_palindrome_deviation;
    }
    j["ritz_evaluated"] = rep.ritz_evaluated;
    if (rep.ritz_evaluated) {
        j["ritz_symmetric"] = rep.ritz_symmetric;
        j["nodes_symmetric"] = rep.nodes_symmetric;
        j["weights_pair_equal"] = rep.weights_pair_equal;
        j["center_estimate"] = rep.center_estimate;
        j["max_node_pair_deviation"] = rep.max_node_pair_deviation;
        j["middle_node_deviation"] = rep.middle_node_deviation;
        j["weight_pair_deviation"] = rep.weight_pair_deviation;
        j["constant_diagonal_deviation"] = rep.constant_diagonal_deviation;
        nlohmann::json pairs = nlohmann::json::array();
        for (const NodePair& p : rep.node_pairs) {
            nlohmann::json jp;
            jp["theta_low"] = p.theta_low;
            jp["theta_high"] = p.theta_high;
            jp["deviation"] = p.deviation;
            pairs.push_back(jp);
        }
        j["node_pairs"] = pairs;
    }
    return j;
}

inline nlohmann::json measure_to_json(const SpectralMeasure& m) {
    nlohmann::json j;
    j["total_mass"] = m.total_mass;
    j["input_was_normalized"] = m.input_was_normalized;
    nlohmann::json jumps = nlohmann::json::array();
    for (const auto& jump : m.jumps) {
        nlohmann::json je;
        je["location"] = jump.location;
        je["mass"] = jump.mass;
        jumps.push_back(je);
    }
    j["jumps"] = jumps;
    return j;
}

// ---------------------------------------------------------------------------
// CSV emitters.
// ---------------------------------------------------------------------------

// Step function of the measure as closed-open intervals; the leading
// interval starts at -inf and the final one is unbounded.
inline std::string measure_steps_csv(const SpectralMeasure& m) {
    std::string out = "t_start,t_end,value\n";
    double acc = 0.0;
    out += "-inf," + format_e17(m.jumps.empty() ? 0.0 : m.jumps.front().location) + "," +
           format_e17(0.0) + "\n";
    for (std::size_t k = 0; k < m.jumps.size(); ++k) {
        acc += m.jumps[k].mass;
        std::string t_end =
            k + 1 < m.jumps.size() ? format_e17(m.jumps[k + 1].location) : std::string("inf");
        out += format_e17(m.jumps[k].location) + "," + t_end + "," + format_e17(acc) + "\n";
    }
    return out;
}

inline std::string rule_csv(const QuadratureRule& rule) {
    std::string out = "index,node,weight\n";
    for (std::size_t k = 0; k < rule.size(); ++k)
        out += std::to_string(k + 1) + "," + format_e17(rule.nodes[k]) + "," +
               format_e17(rule.weights[k]) + "\n";
    return out;
}

struct BoundsCsvRow {
    double kappa = 0.0;
    bool ok = false;
    MStarGap gap{};
    std::optional<BoundsReport> floors;  // set when f and epsilon were given
    std::string error;
};

inline std::string bounds_csv(const std::vector<BoundsCsvRow>& rows, bool with_floors) {
    std::string out = with_floors
                          ? "kappa,m_star_lower,m_star_upper,m_star_average,m_star_exact,rho,m_rho,"
                            "m_sym_floor,m_asym_floor,error\n"
                          : "kappa,m_star_lower,m_star_upper,m_star_average,m_star_exact,error\n";
    for (const auto& r : rows) {
        out += format_e17(r.kappa) + ",";
        if (r.ok) {
            out += format_e17(r.gap.lower) + "," + format_e17(r.gap.upper) + "," +
                   format_e17(r.gap.average()) + "," + format_e17(r.gap.exact);
            if (with_floors) {
                out += "," + format_e17(r.floors->rho) + "," + format_e17(r.floors->m_rho_value) +
                       "," + std::to_string(r.floors->sym.floor) + "," +
                       std::to_string(r.floors->asym.floor);
            }
            out += ",\n";
        } else {
            out += with_floors ? ",,,,,,,," : ",,,,";
            out += r.error + "\n";
        }
    }
    return out;
}

}  // namespace ritzsym
