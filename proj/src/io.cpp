#include "helmball/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <initializer_list>
#include <sstream>

namespace helmball {

using nlohmann::json;

namespace {

void require_keys(const json& j, std::initializer_list<const char*> allowed, const char* what)
{
    if (!j.is_object())
        throw SpecError(std::string(what) + ": expected a JSON object");
    for (const auto& [key, value] : j.items()) {
        if (std::find_if(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; }) == allowed.end())
            throw SpecError(std::string(what) + ": unknown field \"" + key + "\"");
    }
}

double number(const json& j, const char* key, const char* what)
{
    if (!j.contains(key) || !j.at(key).is_number())
        throw SpecError(std::string(what) + ": missing numeric field \"" + key + "\"");
    return j.at(key).get<double>();
}

int integer(const json& j, const char* key, const char* what)
{
    if (!j.contains(key) || !j.at(key).is_number_integer())
        throw SpecError(std::string(what) + ": missing integer field \"" + key + "\"");
    return j.at(key).get<int>();
}

Point point(const json& j, const char* key, const char* what)
{
    if (!j.contains(key) || !j.at(key).is_array())
        throw SpecError(std::string(what) + ": missing array field \"" + key + "\"");
    std::vector<double> v;
    for (const auto& e : j.at(key)) {
        if (!e.is_number())
            throw SpecError(std::string(what) + ": \"" + key + "\" must hold numbers");
        v.push_back(e.get<double>());
    }
    return Point(std::move(v));
}

std::string kind_of(const json& j, const char* what)
{
    if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string())
        throw SpecError(std::string(what) + ": missing \"kind\"");
    return j.at("kind").get<std::string>();
}

json diagnostic_to_json(const DiagnosticValue& v)
{
    return std::visit([](const auto& x) { return json(x); }, v);
}

DiagnosticValue diagnostic_from_json(const json& j)
{
    if (j.is_boolean())
        return j.get<bool>();
    if (j.is_number_integer())
        return j.get<std::int64_t>();
    if (j.is_number())
        return j.get<double>();
    if (j.is_string())
        return j.get<std::string>();
    throw SpecError("report: unsupported diagnostic value");
}

Verdict verdict_from_string(const std::string& s)
{
    if (s == "pass")
        return Verdict::pass;
    if (s == "fail")
        return Verdict::fail;
    if (s == "inconclusive")
        return Verdict::inconclusive;
    throw SpecError("report: unknown verdict \"" + s + "\"");
}

std::vector<const VerificationReport*> sorted_children(const VerificationReport& r)
{
    std::vector<const VerificationReport*> out;
    for (const auto& c : r.children)
        out.push_back(&c);
    std::stable_sort(out.begin(), out.end(), [](auto* a, auto* b) { return a->name < b->name; });
    return out;
}

// JSON has no representation for infinities or NaN.
json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

double number_or_nan(const json& j, const char* key)
{
    if (!j.contains(key))
        throw SpecError(std::string("report: missing field \"") + key + "\"");
    const json& v = j.at(key);
    if (v.is_null())
        return std::nan("");
    if (!v.is_number())
        throw SpecError(std::string("report: field \"") + key + "\" must be numeric");
    return v.get<double>();
}

void csv_rows(const VerificationReport& r, const std::string& prefix, std::ostringstream& os)
{
    const std::string name = prefix.empty() ? r.name : prefix + "/" + r.name;
    os << name << ',' << format_double(r.lhs) << ',' << format_double(r.rhs) << ',' << format_double(r.residual)
       << ',' << format_double(r.tolerance) << ',' << format_double(r.error_bar) << ',' << to_string(r.verdict)
       << '\n';
    for (const auto* c : sorted_children(r))
        csv_rows(*c, name, os);
}

}  // namespace

Domain domain_from_json(const json& j)
{
    const std::string kind = kind_of(j, "domain");
    try {
        if (kind == "ball") {
            require_keys(j, {"kind", "center", "r"}, "ball");
            return ball(point(j, "center", "ball"), number(j, "r", "ball"));
        }
        if (kind == "box") {
            require_keys(j, {"kind", "low", "high"}, "box");
            return box(point(j, "low", "box"), point(j, "high", "box"));
        }
        if (kind == "difference") {
            require_keys(j, {"kind", "a", "b"}, "difference");
            if (!j.contains("a") || !j.contains("b"))
                throw SpecError("difference: needs \"a\" and \"b\"");
            return difference(domain_from_json(j.at("a")), domain_from_json(j.at("b")));
        }
        if (kind == "translate") {
            require_keys(j, {"kind", "of", "by"}, "translate");
            if (!j.contains("of"))
                throw SpecError("translate: needs \"of\"");
            return translate(domain_from_json(j.at("of")), point(j, "by", "translate"));
        }
    } catch (const std::domain_error& e) {
        throw SpecError(e.what());
    }
    throw SpecError("domain: unknown kind \"" + kind + "\"");
}

SolutionField solution_from_json(const json& j)
{
    const std::string kind = kind_of(j, "solution");
    try {
        if (kind == "plane_wave") {
            require_keys(j, {"kind", "lambda", "direction", "phase"}, "plane_wave");
            const Point dir = point(j, "direction", "plane_wave");
            const double phase = j.contains("phase") ? number(j, "phase", "plane_wave") : 0.0;
            return plane_wave(dir.dimension(), number(j, "lambda", "plane_wave"), dir, phase);
        }
        if (kind == "radial") {
            require_keys(j, {"kind", "lambda", "center"}, "radial");
            const Point c = point(j, "center", "radial");
            return radial_solution(c.dimension(), number(j, "lambda", "radial"), c);
        }
        if (kind == "membrane") {
            require_keys(j, {"kind", "i", "j", "a"}, "membrane");
            return membrane_eigenfunction(integer(j, "i", "membrane"), integer(j, "j", "membrane"),
                                          number(j, "a", "membrane"));
        }
        if (kind == "modified_radial") {
            require_keys(j, {"kind", "mu", "center"}, "modified_radial");
            const Point c = point(j, "center", "modified_radial");
            return modified_radial_solution(c.dimension(), number(j, "mu", "modified_radial"), c);
        }
    } catch (const std::domain_error& e) {
        throw SpecError(e.what());
    }
    throw SpecError("solution: unknown kind \"" + kind + "\"");
}

json report_to_json(const VerificationReport& report)
{
    json j;
    j["name"] = report.name;
    j["lhs"] = finite_or_null(report.lhs);
    j["rhs"] = finite_or_null(report.rhs);
    j["residual"] = finite_or_null(report.residual);
    j["tolerance"] = finite_or_null(report.tolerance);
    j["error_bar"] = finite_or_null(report.error_bar);
    j["verdict"] = to_string(report.verdict);
    json diag = json::object();
    for (const auto& [key, value] : report.diagnostics)
        diag[key] = diagnostic_to_json(value);
    j["diagnostics"] = diag;
    if (!report.children.empty()) {
        json children = json::array();
        for (const auto* c : sorted_children(report))
            children.push_back(report_to_json(*c));
        j["children"] = children;
    }
    return j;
}

VerificationReport report_from_json(const json& j)
{
    require_keys(j, {"name", "lhs", "rhs", "residual", "tolerance", "error_bar", "verdict", "diagnostics", "children"},
                 "report");
    VerificationReport r;
    if (!j.contains("name") || !j.at("name").is_string())
        throw SpecError("report: missing \"name\"");
    r.name = j.at("name").get<std::string>();
    r.lhs = number_or_nan(j, "lhs");
    r.rhs = number_or_nan(j, "rhs");
    r.residual = number_or_nan(j, "residual");
    r.tolerance = number_or_nan(j, "tolerance");
    r.error_bar = number_or_nan(j, "error_bar");
    if (!j.contains("verdict") || !j.at("verdict").is_string())
        throw SpecError("report: missing \"verdict\"");
    r.verdict = verdict_from_string(j.at("verdict").get<std::string>());
    if (j.contains("diagnostics"))
        for (const auto& [key, value] : j.at("diagnostics").items())
            r.diagnostics[key] = diagnostic_from_json(value);
    if (j.contains("children"))
        for (const auto& c : j.at("children"))
            r.children.push_back(report_from_json(c));
    return r;
}

std::string reports_to_csv(const std::vector<VerificationReport>& reports)
{
    std::ostringstream os;
    os << "name,lhs,rhs,residual,tolerance,error_bar,verdict\n";
    std::vector<const VerificationReport*> sorted;
    for (const auto& r : reports)
        sorted.push_back(&r);
    std::stable_sort(sorted.begin(), sorted.end(), [](auto* a, auto* b) { return a->name < b->name; });
    for (const auto* r : sorted)
        csv_rows(*r, "", os);
    return os.str();
}

std::string format_double(double v)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v == 0.0 ? 0.0 : v);
    return std::string(buf, res.ptr);
}

}  // namespace helmball
