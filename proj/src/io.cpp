#include "adjoints/io.hpp"

#include <fstream>
#include <sstream>

#include "adjoints/errors.hpp"
#include "adjoints/parse.hpp"
#include "json.hpp"

namespace adjoints {

namespace {

using njson = nlohmann::ordered_json;

void check_keys(const njson& obj, const std::vector<std::string>& allowed,
                const std::string& what) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool ok = false;
        for (const auto& k : allowed)
            if (it.key() == k) {
                ok = true;
                break;
            }
        if (!ok) throw FormatError("unknown key '" + it.key() + "' in " + what);
    }
}

std::string require_string(const njson& obj, const std::string& key, const std::string& what) {
    if (!obj.contains(key)) throw FormatError(what + " is missing '" + key + "'");
    if (!obj[key].is_string()) throw FormatError("'" + key + "' in " + what + " must be a string");
    return obj[key].get<std::string>();
}

DivisorData parse_divisor_json(const njson& obj) {
    check_keys(obj, {"name", "transcendentals", "extensions", "images", "adjoint_order"},
               "divisor");
    DivisorData d;
    d.name = obj.contains("name") ? require_string(obj, "name", "divisor") : "phi";
    std::vector<std::string> trans;
    if (obj.contains("transcendentals")) {
        if (!obj["transcendentals"].is_array())
            throw FormatError("'transcendentals' must be an array");
        for (const auto& s : obj["transcendentals"]) trans.push_back(s.get<std::string>());
    }
    TowerPtr tower = FieldTower::make(trans);
    if (obj.contains("extensions")) {
        if (!obj["extensions"].is_array()) throw FormatError("'extensions' must be an array");
        for (const auto& ext : obj["extensions"]) {
            check_keys(ext, {"gen", "minpoly"}, "extension");
            std::string gen = require_string(ext, "gen", "extension");
            std::string mp = require_string(ext, "minpoly", "extension");
            tower = tower->extended(gen, parse_minpoly(mp, tower, gen));
        }
    }
    d.tower = tower;
    if (!obj.contains("images") || !obj["images"].is_array())
        throw FormatError("divisor '" + d.name + "' needs an 'images' array");
    for (const auto& s : obj["images"]) {
        if (!s.is_string()) throw FormatError("divisor images must be series strings");
        d.images.push_back(parse_series(s.get<std::string>(), tower));
    }
    if (obj.contains("adjoint_order")) {
        if (!obj["adjoint_order"].is_number_integer())
            throw FormatError("'adjoint_order' must be an integer");
        d.adjoint_order_hint = obj["adjoint_order"].get<long>();
    }
    return d;
}

std::string minpoly_to_string(const TowerPtr& tower, std::size_t level) {
    const auto& ext = tower->ext(level);
    std::string out;
    auto needs_parens = [](const std::string& s) {
        int depth = 0;
        for (std::size_t i = 0; i < s.size(); ++i) {
            char c = s[i];
            if (c == '(') ++depth;
            else if (c == ')') --depth;
            else if (depth == 0 && i > 0 && (c == '+' || c == '-')) return true;
        }
        return false;
    };
    for (std::size_t j = ext.minpoly.size(); j-- > 0;) {
        const auto& cv = ext.minpoly[j];
        if (tower->v_is_zero(static_cast<int>(level), cv)) continue;
        std::string cs = tower->v_to_string(static_cast<int>(level), cv);
        std::string piece;
        if (j == 0) {
            piece = cs;
        } else {
            std::string gp = j == 1 ? ext.gen : ext.gen + "^" + std::to_string(j);
            if (cs == "1") piece = gp;
            else if (cs == "-1") piece = "-" + gp;
            else {
                if (needs_parens(cs)) cs = "(" + cs + ")";
                piece = cs + "*" + gp;
            }
        }
        if (out.empty()) out = piece;
        else if (piece[0] == '-') out += " - " + piece.substr(1);
        else out += " + " + piece;
    }
    return out.empty() ? "0" : out;
}

njson divisor_to_json(const DivisorData& d) {
    njson obj;
    obj["name"] = d.name;
    njson trans = njson::array();
    for (const auto& s : d.tower->transcendentals()) trans.push_back(s);
    obj["transcendentals"] = trans;
    njson exts = njson::array();
    for (std::size_t i = 0; i < d.tower->num_extensions(); ++i) {
        njson e;
        e["gen"] = d.tower->ext(i).gen;
        e["minpoly"] = minpoly_to_string(d.tower, i);
        exts.push_back(e);
    }
    obj["extensions"] = exts;
    njson imgs = njson::array();
    for (const auto& im : d.images) imgs.push_back(im.to_string());
    obj["images"] = imgs;
    if (d.adjoint_order_hint) obj["adjoint_order"] = *d.adjoint_order_hint;
    return obj;
}

AdjointOptions parse_options(const njson& obj) {
    AdjointOptions opt;
    check_keys(obj, {"order", "normalize_rows", "precision_cap"}, "options");
    if (obj.contains("order")) {
        std::string o = obj["order"].get<std::string>();
        if (o == "degrevlex") opt.order = MonomialOrder::degrevlex;
        else if (o == "lex") opt.order = MonomialOrder::lex;
        else throw FormatError("unknown monomial order '" + o + "'");
    }
    if (obj.contains("normalize_rows")) opt.normalize_rows = obj["normalize_rows"].get<bool>();
    if (obj.contains("precision_cap"))
        opt.precision_cap = obj["precision_cap"].get<std::int64_t>();
    return opt;
}

std::string dir_of(const std::string& path) {
    auto pos = path.find_last_of('/');
    return pos == std::string::npos ? std::string("") : path.substr(0, pos + 1);
}

njson parse_json_or_throw(const std::string& text) {
    njson j = njson::parse(text, nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded()) throw FormatError("invalid JSON");
    return j;
}

}  // namespace

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw FormatError("cannot write '" + path + "'");
    out << content;
}

ProblemFile parse_problem_text(const std::string& text, const std::string& base_dir) {
    njson j = parse_json_or_throw(text);
    if (!j.is_object()) throw FormatError("problem file must be a JSON object");
    check_keys(j, {"variables", "F", "m", "n", "divisors", "options"}, "problem file");
    ProblemFile p;
    if (!j.contains("variables") || !j["variables"].is_array())
        throw FormatError("problem file needs a 'variables' array");
    for (const auto& v : j["variables"]) p.variables.push_back(v.get<std::string>());
    p.F = parse_poly(require_string(j, "F", "problem file"), p.variables);
    if (j.contains("m")) p.m = j["m"].get<long>();
    if (j.contains("n")) p.n = j["n"].get<long>();
    if (j.contains("options")) p.options = parse_options(j["options"]);
    if (j.contains("divisors")) {
        if (!j["divisors"].is_array()) throw FormatError("'divisors' must be an array");
        for (const auto& dv : j["divisors"]) {
            if (dv.is_string()) {
                auto sub = load_divisor_file(base_dir + dv.get<std::string>());
                for (auto& s : sub) p.divisors.push_back(std::move(s));
            } else {
                p.divisors.push_back(parse_divisor_json(dv));
            }
        }
    }
    return p;
}

ProblemFile load_problem(const std::string& path) {
    return parse_problem_text(read_file(path), dir_of(path));
}

std::vector<DivisorData> parse_divisor_file_text(const std::string& text) {
    njson j = parse_json_or_throw(text);
    std::vector<DivisorData> out;
    if (j.is_object() && j.contains("divisors")) {
        check_keys(j, {"divisors"}, "divisor file");
        for (const auto& dv : j["divisors"]) out.push_back(parse_divisor_json(dv));
    } else if (j.is_array()) {
        for (const auto& dv : j) out.push_back(parse_divisor_json(dv));
    } else if (j.is_object()) {
        out.push_back(parse_divisor_json(j));
    } else {
        throw FormatError("divisor file must be an object or array");
    }
    return out;
}

std::vector<DivisorData> load_divisor_file(const std::string& path) {
    return parse_divisor_file_text(read_file(path));
}

std::string divisor_to_json_text(const DivisorData& d) { return divisor_to_json(d).dump(2); }

std::string divisors_to_json_text(const std::vector<DivisorData>& ds) {
    njson obj;
    njson arr = njson::array();
    for (const auto& d : ds) arr.push_back(divisor_to_json(d));
    obj["divisors"] = arr;
    return obj.dump(2);
}

}  // namespace adjoints
