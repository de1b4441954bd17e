#include "ellq/report.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace ellq {

using nlohmann::json;

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

namespace {

// JSON has no inf/nan; those residuals are written as strings.
json number(double x) {
    if (std::isfinite(x)) return x;
    return format_double(x);
}

double read_number(const json& j) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) {
        std::string s = j.get<std::string>();
        if (s == "inf") return std::numeric_limits<double>::infinity();
        if (s == "-inf") return -std::numeric_limits<double>::infinity();
        if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    }
    throw std::runtime_error("expected a number in report");
}

}  // namespace

std::string to_json_text(const Report& report) {
    json root;
    root["schema"] = report.schema;
    root["pass"] = report.pass;
    root["suites"] = json::array();
    for (const SuiteResult& s : report.suites) {
        json js;
        js["name"] = s.name;
        js["context"] = {{"q", s.context.q},         {"r", s.context.r},
                         {"trunc_N", s.context.trunc_N}, {"tol", s.context.tol},
                         {"samples", s.context.samples}, {"seed", s.context.seed}};
        js["pass"] = s.pass;
        js["cases"] = json::array();
        for (const Case& c : s.cases) {
            json jc{{"name", c.name},
                    {"inputs", c.inputs},
                    {"residual", number(c.residual)},
                    {"threshold", number(c.threshold)},
                    {"negative", c.negative},
                    {"pass", c.pass}};
            if (!c.note.empty()) jc["note"] = c.note;
            js["cases"].push_back(jc);
        }
        root["suites"].push_back(js);
    }
    return root.dump(2) + "\n";
}

Report report_from_json_text(const std::string& text) {
    Report r;
    try {
        json root = json::parse(text);
        r.schema = root.at("schema").get<std::string>();
        r.pass = root.at("pass").get<bool>();
        for (const json& js : root.at("suites")) {
            SuiteResult s;
            s.name = js.at("name").get<std::string>();
            const json& ctx = js.at("context");
            s.context.q = ctx.at("q").get<double>();
            s.context.r = ctx.at("r").get<double>();
            s.context.trunc_N = ctx.at("trunc_N").get<int>();
            s.context.tol = ctx.at("tol").get<double>();
            s.context.samples = ctx.at("samples").get<int>();
            s.context.seed = ctx.at("seed").get<std::uint64_t>();
            s.pass = js.at("pass").get<bool>();
            for (const json& jc : js.at("cases")) {
                Case c;
                c.name = jc.at("name").get<std::string>();
                c.inputs = jc.at("inputs").get<std::string>();
                c.residual = read_number(jc.at("residual"));
                c.threshold = read_number(jc.at("threshold"));
                c.negative = jc.at("negative").get<bool>();
                c.pass = jc.at("pass").get<bool>();
                if (jc.contains("note")) c.note = jc.at("note").get<std::string>();
                s.cases.push_back(c);
            }
            r.suites.push_back(s);
        }
    } catch (const json::exception& e) {
        throw std::runtime_error(std::string("malformed report: ") + e.what());
    }
    return r;
}

namespace {

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + "\"";
}

}  // namespace

std::string to_csv(const Report& report) {
    std::ostringstream os;
    os << "suite,name,residual,threshold,pass\n";
    for (const SuiteResult& s : report.suites)
        for (const Case& c : s.cases)
            os << csv_field(s.name) << ',' << csv_field(c.name + (c.inputs.empty() ? "" : " [" + c.inputs + "]"))
               << ',' << format_double(c.residual) << ',' << format_double(c.threshold) << ','
               << (c.pass ? "true" : "false") << '\n';
    return os.str();
}

std::string to_table(const Report& report) {
    std::ostringstream os;
    for (const SuiteResult& s : report.suites) {
        int passed = 0;
        for (const Case& c : s.cases) passed += c.pass;
        os << "suite " << s.name << "  q=" << format_double(s.context.q) << " r=" << format_double(s.context.r)
           << " trunc=" << s.context.trunc_N << " tol=" << format_double(s.context.tol)
           << " samples=" << s.context.samples << " seed=" << s.context.seed << "\n";
        for (const Case& c : s.cases) {
            char line[512];
            std::snprintf(line, sizeof line, "  %-4s %-44s %-34s %12.3e %s %9.1e%s\n", c.pass ? "ok" : "FAIL",
                          c.name.c_str(), c.inputs.c_str(), c.residual, c.negative ? ">" : "<", c.threshold,
                          c.note.empty() ? "" : ("  " + c.note).c_str());
            os << line;
        }
        os << "  " << passed << "/" << s.cases.size() << " cases pass: " << (s.pass ? "PASS" : "FAIL") << "\n";
    }
    os << "overall: " << (report.pass ? "PASS" : "FAIL") << "\n";
    return os.str();
}

}  // namespace ellq
