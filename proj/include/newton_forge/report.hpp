#pragma once

// Problem instances, the analysis/verification pipeline and its renderings
// (JSON, text, TSV, SVG).

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "newton_forge/arith.hpp"
#include "newton_forge/dynamics.hpp"
#include "newton_forge/error.hpp"
#include "newton_forge/hodge.hpp"
#include "newton_forge/lattice.hpp"
#include "newton_forge/oracle.hpp"
#include "newton_forge/polygon.hpp"

namespace newton_forge {

using json = nlohmann::ordered_json;

/// {"p": int, "matrix": [[int, ...], ...], "budget": int?}. Rows of "matrix"
/// are rows of J, so its columns are the exponent vectors.
struct ProblemInstance {
    std::optional<std::uint64_t> p;
    IntMatrix matrix;
    std::optional<std::uint64_t> budget;

    friend bool operator==(const ProblemInstance&, const ProblemInstance&) = default;
};

inline ProblemInstance parse_instance(const std::string& text, bool require_p = true) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::InvalidInput, std::string("malformed JSON: ") + e.what());
    }
    if (!doc.is_object()) throw Error(ErrorCode::InvalidInput, "instance must be a JSON object");
    ProblemInstance inst;
    if (doc.contains("p")) {
        if (!doc["p"].is_number_integer() || doc["p"].get<std::int64_t>() < 0)
            throw Error(ErrorCode::InvalidInput, "\"p\" must be a nonnegative integer");
        inst.p = doc["p"].get<std::uint64_t>();
    } else if (require_p) {
        throw Error(ErrorCode::InvalidInput, "missing \"p\"");
    }
    if (!doc.contains("matrix") || !doc["matrix"].is_array() || doc["matrix"].empty())
        throw Error(ErrorCode::InvalidInput, "\"matrix\" must be a non-empty array of rows");
    for (const auto& row : doc["matrix"]) {
        if (!row.is_array()) throw Error(ErrorCode::InvalidInput, "matrix rows must be arrays");
        IntVector r;
        for (const auto& x : row) {
            if (!x.is_number_integer()) throw Error(ErrorCode::InvalidInput, "matrix entries must be integers");
            r.emplace_back(x.get<std::int64_t>());
        }
        inst.matrix.push_back(std::move(r));
    }
    if (!is_square(inst.matrix)) throw Error(ErrorCode::InvalidInput, "matrix must be square");
    if (doc.contains("budget")) {
        if (!doc["budget"].is_number_integer() || doc["budget"].get<std::int64_t>() <= 0)
            throw Error(ErrorCode::InvalidInput, "\"budget\" must be a positive integer");
        inst.budget = doc["budget"].get<std::uint64_t>();
    }
    return inst;
}

inline json to_json(const ProblemInstance& inst) {
    json out = json::object();
    if (inst.p) out["p"] = *inst.p;
    json rows = json::array();
    for (const auto& row : inst.matrix) {
        json r = json::array();
        for (const auto& x : row) r.push_back(x.convert_to<std::int64_t>());
        rows.push_back(std::move(r));
    }
    out["matrix"] = std::move(rows);
    if (inst.budget) out["budget"] = *inst.budget;
    return out;
}

/// Theoretical side: everything derived from J and p without character sums.
struct Analysis {
    ProblemInstance instance;
    PrimeContext ctx;
    FundamentalDomain domain;
    Integer m;
    std::vector<Orbit> orbits;
    StabilityResult stability;
    HodgeData hodge;
    LowerPolygon hodge_polygon;
    LowerPolygon newton_polygon;
    Comparison comparison;
};

inline Analysis analyze(const ProblemInstance& inst) {
    if (!inst.p) throw Error(ErrorCode::InvalidInput, "missing \"p\"");
    ExponentMatrix j(inst.matrix);
    PrimeContext ctx(*inst.p, j);
    FundamentalDomain domain = fundamental_domain(j);
    Integer m = denominator_M(j);
    auto orbits = orbit_decomposition(ctx, domain);
    auto stability = is_p_stable(ctx, domain);
    auto hodge = hodge_numbers(domain);
    auto hp = hodge_polygon(domain, hodge);
    auto np = newton_polygon_theoretical(orbits);
    auto cmp = compare(np, hp);
    return Analysis{inst,      std::move(ctx),       std::move(domain), std::move(m),  std::move(orbits),
                    stability, std::move(hodge),     std::move(hp),     std::move(np), std::move(cmp)};
}

struct BudgetReport {
    std::uint64_t limit;
    Integer required;  // torus size of the largest field needed
    std::string message;
};

struct Report {
    Analysis analysis;
    std::optional<EmpiricalResult> empirical;
    std::optional<BudgetReport> budget;
    std::optional<double> seconds;

    bool empirical_match() const { return empirical && empirical->newton == analysis.newton_polygon; }
};

/// analyze + oracle. Budget overruns are recorded, not thrown.
inline Report verify(const ProblemInstance& inst, OracleOptions opts) {
    Report report{analyze(inst), std::nullopt, std::nullopt, std::nullopt};
    const auto& ctx = report.analysis.ctx;
    try {
        report.empirical = run_oracle(ctx, opts);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::BudgetExceeded) throw;
        std::size_t top = ctx.matrix().abs_det().convert_to<std::size_t>() + opts.slack;
        report.budget = BudgetReport{opts.budget, torus_size(ctx.p(), ctx.matrix().n(), top), e.what()};
    }
    return report;
}

// ---- rendering -------------------------------------------------------------

inline json rationals_json(const RationalVector& v) {
    json out = json::array();
    for (const auto& x : v) out.push_back(to_string(x));
    return out;
}

inline json integers_json(const IntVector& v) {
    json out = json::array();
    for (const auto& x : v) out.push_back(x.convert_to<std::int64_t>());
    return out;
}

inline json polygon_json(const LowerPolygon& poly) {
    json vertices = json::array();
    for (const auto& v : poly.vertices()) vertices.push_back(json::array({to_string(v.x), to_string(v.y)}));
    json slopes = json::array();
    for (const auto& s : poly.slopes()) slopes.push_back(to_string(s));
    return json{{"vertices", std::move(vertices)}, {"slopes", std::move(slopes)}};
}

inline json cyclotomic_json(const CyclotomicInteger& a) {
    json coeffs = json::array();
    for (const auto& c : a.coeffs()) coeffs.push_back(c.str());
    return coeffs;
}

inline json to_json(const Report& report) {
    const Analysis& a = report.analysis;
    json out = json::object();
    out["instance"] = to_json(a.instance);
    out["n"] = a.ctx.matrix().n();
    out["det"] = a.ctx.matrix().det().str();
    out["M"] = a.m.str();

    json domain = json::array();
    for (const auto& pt : a.domain.points())
        domain.push_back(json{{"u", integers_json(pt.u)}, {"r", rationals_json(pt.r)}, {"weight", to_string(pt.weight)}});
    out["domain"] = std::move(domain);

    json orbits = json::array();
    for (const auto& orbit : a.orbits) {
        json pts = json::array();
        for (const auto& pt : orbit.points) pts.push_back(integers_json(pt.u));
        orbits.push_back(json{{"points", std::move(pts)}, {"length", orbit.length()}, {"slope_sum", to_string(orbit.slope_sum)}});
    }
    out["orbits"] = std::move(orbits);

    out["stable"] = a.stability.stable;
    if (a.stability.witness)
        out["witness"] = json{{"u", integers_json(a.stability.witness->point.u)},
                              {"weight", to_string(a.stability.witness->point.weight)},
                              {"image", integers_json(a.stability.witness->image.u)},
                              {"image_weight", to_string(a.stability.witness->image.weight)}};
    else
        out["witness"] = nullptr;

    json hodge_numbers = json::array();
    for (const auto& h : a.hodge.h) hodge_numbers.push_back(h.str());
    json hp = polygon_json(a.hodge_polygon);
    hp["H"] = std::move(hodge_numbers);
    out["hodge_polygon"] = std::move(hp);
    out["newton_polygon"] = polygon_json(a.newton_polygon);
    out["comparison"] = json{{"verdict", std::string(to_string(a.comparison.verdict))},
                             {"same_endpoints", a.comparison.same_endpoints},
                             {"max_gap", to_string(a.comparison.max_gap)}};

    if (report.empirical) {
        json sums = json::array();
        for (const auto& s : report.empirical->sums) {
            json counts = json::array();
            for (auto c : s.counts) counts.push_back(c);
            sums.push_back(json{{"i", s.degree}, {"counts", std::move(counts)}, {"value", cyclotomic_json(s.value)},
                                {"text", s.value.str()}});
        }
        json coeffs = json::array();
        for (const auto& c : report.empirical->l_poly.coeffs) coeffs.push_back(cyclotomic_json(c));
        out["empirical"] = json{{"sums", std::move(sums)},
                                {"inverted", report.empirical->l_poly.inverted},
                                {"l_coefficients", std::move(coeffs)},
                                {"newton_polygon", polygon_json(report.empirical->newton)},
                                {"match", report.empirical_match()}};
    }
    if (report.budget)
        out["budget"] = json{{"limit", report.budget->limit},
                             {"required", report.budget->required.str()},
                             {"message", report.budget->message}};
    if (report.seconds) out["timing"] = json{{"seconds", *report.seconds}};
    return out;
}

inline std::string join_vector(const IntVector& v) {
    std::string out = "(";
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + v[i].str();
    return out + ")";
}

inline std::string join_rationals(const std::vector<Rational>& v) {
    std::string out = "{";
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + to_string(v[i]);
    return out + "}";
}

inline std::string polynomial_text(const LPolynomial& poly) {
    std::string out;
    for (std::size_t k = 0; k < poly.coeffs.size(); ++k) {
        if (poly.coeffs[k].is_zero()) continue;
        std::string c = poly.coeffs[k].str();
        bool simple = c.find(' ') == std::string::npos;
        std::string term = simple ? c : "(" + c + ")";
        if (k > 0) {
            if (term == "1") term.clear();
            else if (term == "-1") term = "-";
            term += k == 1 ? "t" : "t^" + std::to_string(k);
        }
        if (!out.empty()) {
            if (term.front() == '-') out += " - " + term.substr(1);
            else out += " + " + term;
        } else {
            out = term;
        }
    }
    return out.empty() ? "0" : out;
}

inline std::string to_text(const Report& report) {
    const Analysis& a = report.analysis;
    std::ostringstream os;
    os << "instance: p = " << a.ctx.p() << ", n = " << a.ctx.matrix().n() << ", det J = " << a.ctx.matrix().det()
       << ", M = " << a.m << "\n";
    os << "fundamental domain (" << a.domain.size() << " points):\n";
    for (const auto& pt : a.domain.points()) {
        os << "  u = " << join_vector(pt.u) << "  r = (";
        for (std::size_t i = 0; i < pt.r.size(); ++i) os << (i ? "," : "") << to_string(pt.r[i]);
        os << ")  w = " << to_string(pt.weight) << "\n";
    }
    os << "orbits under the p-action:\n";
    for (const auto& orbit : a.orbits) {
        os << "  ";
        for (std::size_t i = 0; i < orbit.points.size(); ++i) os << (i ? " -> " : "") << join_vector(orbit.points[i].u);
        os << "  (d = " << orbit.length() << ", slope sum = " << to_string(orbit.slope_sum) << ")\n";
    }
    os << "p-stable: " << (a.stability.stable ? "true" : "false");
    if (a.stability.witness)
        os << " (witness u = " << join_vector(a.stability.witness->point.u) << ", w(u) = "
           << to_string(a.stability.witness->point.weight)
           << ", w(p.u) = " << to_string(a.stability.witness->image.weight) << ")";
    os << "\n";
    os << "Hodge polygon slopes:  " << join_rationals(a.hodge_polygon.slopes()) << "\n";
    os << "Newton polygon slopes: " << join_rationals(a.newton_polygon.slopes()) << "\n";
    os << "comparison: " << to_string(a.comparison.verdict) << ", endpoints "
       << (a.comparison.same_endpoints ? "shared" : "differ") << " (" << to_string(a.comparison.upper_end.x) << ", "
       << to_string(a.comparison.upper_end.y) << "), max gap " << to_string(a.comparison.max_gap) << "\n";
    if (report.empirical) {
        const auto& e = *report.empirical;
        for (const auto& s : e.sums) os << "S_" << s.degree << " = " << s.value.str() << "\n";
        os << (e.l_poly.inverted ? "1/L(t) = " : "L(t) = ") << polynomial_text(e.l_poly) << "\n";
        os << "empirical Newton polygon slopes: " << join_rationals(e.newton.slopes()) << "\n";
        os << "match: " << (report.empirical_match() ? "true" : "false") << "\n";
    }
    if (report.budget) os << "budget exceeded: " << report.budget->message << "\n";
    if (report.seconds) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.3f", *report.seconds);
        os << "time: " << buf << " s\n";
    }
    return os.str();
}

/// One vertex per line: "x<TAB>y" with exact rationals.
inline std::string polygon_tsv(const LowerPolygon& poly) {
    std::string out;
    for (const auto& v : poly.vertices()) out += to_string(v.x) + "\t" + to_string(v.y) + "\n";
    return out;
}

struct SvgLayer {
    std::string name;
    std::string color;
    const LowerPolygon* polygon;
};

/// Deterministic SVG with the given polygons overlaid on an integer grid.
inline std::string polygon_svg(const std::vector<SvgLayer>& layers) {
    const double unit = 40.0, margin = 40.0;
    Rational max_x = 1, max_y = 1;
    for (const auto& layer : layers) {
        if (layer.polygon->end().x > max_x) max_x = layer.polygon->end().x;
        for (const auto& v : layer.polygon->vertices())
            if (v.y > max_y) max_y = v.y;
    }
    const long grid_x = static_cast<long>(floor(max_x).convert_to<long long>()) + (denominator(max_x) == 1 ? 0 : 1);
    const long grid_y = static_cast<long>(floor(max_y).convert_to<long long>()) + (denominator(max_y) == 1 ? 0 : 1);
    const double width = 2 * margin + unit * grid_x, height = 2 * margin + unit * grid_y;

    auto fmt = [](double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.3f", v);
        return std::string(buf);
    };
    auto px = [&](const Rational& x) { return margin + unit * x.convert_to<double>(); };
    auto py = [&](const Rational& y) { return height - margin - unit * y.convert_to<double>(); };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(width) << "\" height=\"" << fmt(height)
       << "\" viewBox=\"0 0 " << fmt(width) << " " << fmt(height) << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<g stroke=\"#dddddd\" stroke-width=\"1\">\n";
    for (long x = 0; x <= grid_x; ++x)
        os << "<line x1=\"" << fmt(px(x)) << "\" y1=\"" << fmt(py(0)) << "\" x2=\"" << fmt(px(x)) << "\" y2=\""
           << fmt(py(grid_y)) << "\"/>\n";
    for (long y = 0; y <= grid_y; ++y)
        os << "<line x1=\"" << fmt(px(0)) << "\" y1=\"" << fmt(py(y)) << "\" x2=\"" << fmt(px(grid_x)) << "\" y2=\""
           << fmt(py(y)) << "\"/>\n";
    os << "</g>\n";
    os << "<g stroke=\"black\" stroke-width=\"1.5\">\n";
    os << "<line x1=\"" << fmt(px(0)) << "\" y1=\"" << fmt(py(0)) << "\" x2=\"" << fmt(px(grid_x)) << "\" y2=\""
       << fmt(py(0)) << "\"/>\n";
    os << "<line x1=\"" << fmt(px(0)) << "\" y1=\"" << fmt(py(0)) << "\" x2=\"" << fmt(px(0)) << "\" y2=\""
       << fmt(py(grid_y)) << "\"/>\n";
    os << "</g>\n";
    double legend_y = margin / 2;
    for (const auto& layer : layers) {
        os << "<polyline fill=\"none\" stroke=\"" << layer.color << "\" stroke-width=\"2\" points=\"";
        bool first = true;
        for (const auto& v : layer.polygon->vertices()) {
            os << (first ? "" : " ") << fmt(px(v.x)) << "," << fmt(py(v.y));
            first = false;
        }
        os << "\"/>\n";
        for (const auto& v : layer.polygon->vertices())
            os << "<circle cx=\"" << fmt(px(v.x)) << "\" cy=\"" << fmt(py(v.y)) << "\" r=\"3\" fill=\"" << layer.color
               << "\"/>\n";
        os << "<text x=\"" << fmt(margin) << "\" y=\"" << fmt(legend_y) << "\" fill=\"" << layer.color
           << "\" font-family=\"monospace\" font-size=\"12\">" << layer.name << "</text>\n";
        legend_y += 14;
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace newton_forge
