#ifndef COARSEDEG_MAPPARSE_HPP
#define COARSEDEG_MAPPARSE_HPP

#include <charconv>
#include <string>
#include <vector>

#include "coarsedeg/maps.hpp"

namespace coarsedeg {

namespace detail {

inline std::string trim_copy(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\n' || s[b] == '\r')) ++b;
    while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\n' || s[e - 1] == '\r'))
        --e;
    return s.substr(b, e - b);
}

/// Split on `delim` at nesting depth zero w.r.t. (), {}.
inline std::vector<std::string> split_top_level(const std::string& s, char delim) {
    std::vector<std::string> out;
    int depth = 0;
    std::string cur;
    for (const char c : s) {
        if (c == '(' || c == '{') ++depth;
        if (c == ')' || c == '}') --depth;
        if (c == delim && depth == 0) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

inline double parse_number_arg(const std::string& raw, const std::string& context) {
    const std::string s = trim_copy(raw);
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
        throw ParseError("expected a number in " + context + ", got '" + s + "'", 1, 0);
    return v;
}

inline std::uint64_t parse_seed_arg(const std::string& raw, const std::string& context) {
    const std::string s = trim_copy(raw);
    std::uint64_t v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
        throw ParseError("expected a seed in " + context + ", got '" + s + "'", 1, 0);
    return v;
}

/// "name(arg1,...)": returns args if `s` has exactly that shape.
inline bool match_call(const std::string& s, const std::string& name,
                       std::vector<std::string>& args) {
    if (s.size() < name.size() + 2 || s.compare(0, name.size(), name) != 0) return false;
    std::size_t i = name.size();
    while (i < s.size() && s[i] == ' ') ++i;
    if (i >= s.size() || s[i] != '(' || s.back() != ')') return false;
    args = split_top_level(s.substr(i + 1, s.size() - i - 2), ',');
    return true;
}

/// "name(arg1,...){body}" or "name{body}": matches the brace form.
inline bool match_braced(const std::string& s, const std::string& name,
                         std::vector<std::string>& args, std::string& body) {
    if (s.size() < name.size() + 2 || s.compare(0, name.size(), name) != 0) return false;
    std::size_t i = name.size();
    while (i < s.size() && s[i] == ' ') ++i;
    args.clear();
    if (i < s.size() && s[i] == '(') {
        int depth = 1;
        const std::size_t open = i;
        ++i;
        while (i < s.size() && depth > 0) {
            if (s[i] == '(') ++depth;
            if (s[i] == ')') --depth;
            ++i;
        }
        if (depth != 0) return false;
        args = split_top_level(s.substr(open + 1, i - open - 2), ',');
        while (i < s.size() && s[i] == ' ') ++i;
    }
    if (i >= s.size() || s[i] != '{' || s.back() != '}') return false;
    body = s.substr(i + 1, s.size() - i - 2);
    return true;
}

} // namespace detail

/// Parse the CLI map syntax: "identity", "reflect(i)", "antipodal",
/// "translate(v1,...,vn)", "rotate(theta[,a,b])", "fold{...}",
/// "perturb(eps,seed){...}", "compose{...;...}", or a parenthesized
/// expression map "(e1, ..., em)". `dim_hint` (0 = unknown) resolves the
/// dimension of builtins that do not imply one; `halfspace` restricts the
/// resulting map's domain to the closed half-space.
inline MapSpec parse_map_text(const std::string& raw_text, int dim_hint = 0,
                              bool halfspace = false);

namespace detail {

inline MapSpec parse_map_text_impl(const std::string& text, int dim_hint, bool halfspace) {
    using namespace detail;

    auto require_dim = [&](const char* what) -> int {
        if (dim_hint < 1)
            throw ParseError(std::string("builtin '") + what + "' needs an explicit --dim", 1,
                             0);
        return dim_hint;
    };
    auto finish = [&](MapSpec m) -> MapSpec {
        if (dim_hint > 0 && m.dim != dim_hint)
            throw ParseError("map dimension " + std::to_string(m.dim) +
                                 " does not match requested dimension " +
                                 std::to_string(dim_hint),
                             1, 0);
        // A fold is inherently a full-space map; the flag applies elsewhere.
        if (halfspace && !std::holds_alternative<kinds::Fold>(m.kind))
            m.domain = DomainKind::HalfSpace;
        return m;
    };

    if (text[0] == '(') {
        MapSpec m = expression_map(parse_map_expr(text),
                                   dim_hint > 0 ? dim_hint : -1);
        m.label = text;
        return finish(std::move(m));
    }

    std::vector<std::string> args;
    std::string body;

    if (text == "identity") return finish(identity_map(require_dim("identity")));
    if (text == "antipodal") return finish(antipodal_map(require_dim("antipodal")));

    if (match_call(text, "reflect", args)) {
        if (args.size() != 1)
            throw ParseError("reflect takes exactly one axis argument", 1, 0);
        const double axis = parse_number_arg(args[0], "reflect");
        return finish(reflection_map(require_dim("reflect"), static_cast<int>(axis)));
    }

    if (match_call(text, "translate", args)) {
        WorldPoint v;
        for (const auto& a : args) v.push_back(parse_number_arg(a, "translate"));
        if (v.empty()) throw ParseError("translate needs at least one component", 1, 0);
        if (dim_hint > 0) {
            if (static_cast<int>(v.size()) > dim_hint)
                throw ParseError("translate vector longer than the requested dimension", 1, 0);
            v.resize(static_cast<std::size_t>(dim_hint), 0.0);
        }
        return finish(translation_map(std::move(v)));
    }

    if (match_call(text, "rotate", args)) {
        if (args.size() != 1 && args.size() != 3)
            throw ParseError("rotate takes (theta) or (theta, axis_a, axis_b)", 1, 0);
        const double theta = parse_number_arg(args[0], "rotate");
        const int dim = dim_hint > 0 ? dim_hint : 2;
        int a = 0, b = 1;
        if (args.size() == 3) {
            a = static_cast<int>(parse_number_arg(args[1], "rotate"));
            b = static_cast<int>(parse_number_arg(args[2], "rotate"));
        }
        return finish(rotation_map(dim, theta, a, b));
    }

    if (match_braced(text, "fold", args, body)) {
        if (!args.empty()) throw ParseError("fold takes no arguments before the braces", 1, 0);
        MapSpec inner = parse_map_text(body, dim_hint, true);
        return finish(fold_map(std::move(inner)));
    }

    if (match_braced(text, "perturb", args, body)) {
        if (args.size() != 2)
            throw ParseError("perturb takes (eps, seed) before the braces", 1, 0);
        const double eps = parse_number_arg(args[0], "perturb");
        const std::uint64_t seed = parse_seed_arg(args[1], "perturb");
        // the domain restriction belongs to the outermost map only
        MapSpec base = parse_map_text(body, dim_hint, false);
        return finish(perturbation_map(std::move(base), eps, seed));
    }

    if (match_braced(text, "compose", args, body)) {
        if (!args.empty())
            throw ParseError("compose takes no arguments before the braces", 1, 0);
        std::vector<MapSpec> stages;
        // stages are full-space formulas; only the composite is restricted
        for (const auto& part : split_top_level(body, ';'))
            stages.push_back(parse_map_text(part, dim_hint, false));
        return finish(composition_map(std::move(stages)));
    }

    throw ParseError("unknown map '" + text + "'", 1, 0);
}

} // namespace detail

inline MapSpec parse_map_text(const std::string& raw_text, int dim_hint, bool halfspace) {
    const std::string text = detail::trim_copy(raw_text);
    if (text.empty()) throw ParseError("empty map text", 1, 0);
    try {
        return detail::parse_map_text_impl(text, dim_hint, halfspace);
    } catch (const ParseError&) {
        throw;
    } catch (const CoarseError& e) {
        // constructor-level validation (axis ranges, stage mismatches, ...)
        // is still a defect of the map text, so report it as one
        throw ParseError(e.what(), 1, 0);
    }
}

} // namespace coarsedeg

#endif // COARSEDEG_MAPPARSE_HPP
