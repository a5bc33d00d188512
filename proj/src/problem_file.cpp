#include "quadspec/problem_file.hpp"

#include <algorithm>
#include <set>

namespace quadspec {

namespace {

using json = nlohmann::ordered_json;

void allow_keys(const json& obj, const std::string& where, std::initializer_list<const char*> keys) {
    if (!obj.is_object()) throw InputError(where + " must be an object");
    for (const auto& [key, _] : obj.items()) {
        const bool known = std::any_of(keys.begin(), keys.end(), [&](const char* k) { return key == k; });
        if (!known) throw InputError("unknown key " + where + "." + key);
    }
}

double number(const json& j, const std::string& where) {
    if (!j.is_number()) throw InputError(where + " must be a number");
    return j.get<double>();
}

int integer(const json& j, const std::string& where) {
    if (!j.is_number_integer()) throw InputError(where + " must be an integer");
    return j.get<int>();
}

bool boolean(const json& j, const std::string& where) {
    if (!j.is_boolean()) throw InputError(where + " must be true or false");
    return j.get<bool>();
}

Complex complex_value(const json& j, const std::string& where) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
        return {j[0].get<double>(), j[1].get<double>()};
    }
    throw InputError(where + " must be a number or [re, im]");
}

std::vector<double> number_list(const json& j, const std::string& where) {
    if (j.is_number()) return {j.get<double>()};
    if (!j.is_array() || j.empty()) throw InputError(where + " must be a number or a non-empty list");
    std::vector<double> out;
    for (std::size_t k = 0; k < j.size(); ++k) out.push_back(number(j[k], where + "[" + std::to_string(k) + "]"));
    return out;
}

PolynomialSymbol symbol_value(const json& j, const std::string& where) {
    try {
        if (j.is_string()) return parse_polynomial(j.get<std::string>());
        if (j.is_object() && j.contains("expr")) {
            allow_keys(j, where, {"expr", "n"});
            if (!j["expr"].is_string()) throw InputError(where + ".expr must be a string");
            const int n = j.contains("n") ? integer(j["n"], where + ".n") : 0;
            return parse_polynomial(j["expr"].get<std::string>(), n);
        }
        if (j.is_object()) return PolynomialSymbol::from_quadratic(io::quadratic_from_json(j));
    } catch (const InputError& e) {
        throw InputError(where + ": " + e.what());
    }
    throw InputError(where + " must be an expression string or a symbol object");
}

ProblemFile parse_document(const json& doc) {
    allow_keys(doc, "config",
               {"format_version", "symbols", "problem", "spectrum", "oracle", "probe", "output", "seed"});
    ProblemFile pf;
    if (doc.contains("format_version")) {
        pf.format_version = integer(doc["format_version"], "format_version");
        if (pf.format_version != 1) throw InputError("format_version " + std::to_string(pf.format_version) + " is not supported");
    }
    if (!doc.contains("symbols")) throw InputError("missing key symbols");
    const auto& syms = doc["symbols"];
    if (!syms.is_object() || syms.empty()) throw InputError("symbols must be a non-empty object");
    for (const auto& [name, value] : syms.items()) {
        pf.symbols.emplace_back(name, symbol_value(value, "symbols." + name));
    }
    auto find_symbol = [&](const std::string& name, const std::string& where) -> const PolynomialSymbol& {
        for (const auto& [k, v] : pf.symbols) {
            if (k == name) return v;
        }
        throw InputError(where + " names unknown symbol '" + name + "'");
    };

    if (doc.contains("problem")) {
        const auto& p = doc["problem"];
        allow_keys(p, "problem", {"points", "h", "perturbation"});
        ModelProblem mp;
        if (!p.contains("points") || !p["points"].is_array() || p["points"].empty()) {
            throw InputError("problem.points must be a non-empty list");
        }
        for (std::size_t k = 0; k < p["points"].size(); ++k) {
            const auto& pt = p["points"][k];
            const std::string where = "problem.points[" + std::to_string(k) + "]";
            allow_keys(pt, where, {"X", "symbol", "p1"});
            if (!pt.contains("symbol") || !pt["symbol"].is_string()) throw InputError(where + ".symbol must name a symbol");
            WellPoint w;
            const auto& sym = find_symbol(pt["symbol"].get<std::string>(), where + ".symbol");
            try {
                w.q = sym.to_quadratic();
            } catch (const InputError& e) {
                throw InputError(where + ".symbol: " + e.what());
            }
            const int dim = 2 * w.q.n();
            w.X = PhasePoint::Zero(dim);
            if (pt.contains("X")) {
                const auto xs = number_list(pt["X"], where + ".X");
                if (static_cast<int>(xs.size()) != dim) throw InputError(where + ".X must have " + std::to_string(dim) + " entries");
                for (int i = 0; i < dim; ++i) w.X(i) = xs[i];
            }
            w.p1 = pt.contains("p1") ? complex_value(pt["p1"], where + ".p1") : Complex{};
            mp.points.push_back(std::move(w));
        }
        if (p.contains("h")) {
            pf.h_ladder = number_list(p["h"], "problem.h");
            for (double h : pf.h_ladder) {
                if (!(h > 0.0)) throw InputError("problem.h entries must be positive");
            }
            mp.h = pf.h_ladder.front();
        }
        if (p.contains("perturbation")) mp.perturbation = symbol_value(p["perturbation"], "problem.perturbation");
        try {
            mp.validate();
        } catch (const InputError& e) {
            throw InputError(std::string("problem: ") + e.what());
        }
        if (mp.perturbation && mp.perturbation->n() != mp.n()) {
            throw InputError("problem.perturbation has dimension " + std::to_string(mp.perturbation->n()) +
                             ", points have " + std::to_string(mp.n()));
        }
        pf.problem = std::move(mp);
    }

    if (doc.contains("spectrum")) {
        const auto& s = doc["spectrum"];
        allow_keys(s, "spectrum", {"radius"});
        if (s.contains("radius")) pf.spectrum.radius = number(s["radius"], "spectrum.radius");
    }
    if (doc.contains("oracle")) {
        const auto& o = doc["oracle"];
        allow_keys(o, "oracle", {"N", "h", "sigma_min", "binary"});
        if (o.contains("N")) pf.oracle.N = integer(o["N"], "oracle.N");
        if (o.contains("h")) pf.oracle.h = number(o["h"], "oracle.h");
        if (o.contains("sigma_min")) pf.oracle.sigma_min_at = complex_value(o["sigma_min"], "oracle.sigma_min");
        if (o.contains("binary")) pf.oracle.binary = boolean(o["binary"], "oracle.binary");
    }
    if (doc.contains("probe")) {
        const auto& q = doc["probe"];
        allow_keys(q, "probe", {"C", "C0", "N", "radii", "angles", "h", "heatmap"});
        if (q.contains("C")) pf.probe.C = number(q["C"], "probe.C");
        if (q.contains("C0")) pf.probe.C0 = number(q["C0"], "probe.C0");
        if (q.contains("N")) pf.probe.N = integer(q["N"], "probe.N");
        if (q.contains("radii")) pf.probe.radii = integer(q["radii"], "probe.radii");
        if (q.contains("angles")) pf.probe.angles = integer(q["angles"], "probe.angles");
        if (q.contains("h")) pf.probe.hs = number_list(q["h"], "probe.h");
        if (q.contains("heatmap")) pf.probe.heatmap = boolean(q["heatmap"], "probe.heatmap");
    }
    if (doc.contains("output")) {
        const auto& o = doc["output"];
        allow_keys(o, "output", {"dir"});
        if (o.contains("dir")) {
            if (!o["dir"].is_string()) throw InputError("output.dir must be a string");
            pf.output_dir = o["dir"].get<std::string>();
        }
    }
    if (doc.contains("seed")) {
        if (!doc["seed"].is_number_unsigned()) throw InputError("seed must be a non-negative integer");
        pf.seed = doc["seed"].get<std::uint64_t>();
    }
    pf.echo = doc;
    return pf;
}

}  // namespace

ModelProblem ProblemFile::model_problem() const {
    if (problem) return *problem;
    ModelProblem mp;
    WellPoint w;
    w.q = primary_symbol().to_quadratic();
    w.X = PhasePoint::Zero(2 * w.q.n());
    mp.points.push_back(std::move(w));
    if (!h_ladder.empty()) mp.h = h_ladder.front();
    return mp;
}

ProblemFile parse_problem_text(const std::string& text) {
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) throw InputError("input is empty");
    if (text[first] != '{') {
        ProblemFile pf;
        pf.symbols.emplace_back("q", parse_polynomial(text));
        pf.echo = io::Json{{"symbols", {{"q", text.substr(first, text.find_last_not_of(" \t\r\n") - first + 1)}}}};
        return pf;
    }
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError(std::string("malformed JSON: ") + e.what());
    }
    if (doc.is_object() && doc.contains("Q_re") && !doc.contains("symbols")) doc = json{{"symbols", {{"q", doc}}}};
    return parse_document(doc);
}

ProblemFile load_problem_file(const std::filesystem::path& path) {
    return parse_problem_text(io::read_text(path));
}

}  // namespace quadspec
