#include "fd6/report.hpp"

#include <algorithm>
#include <cstdio>

#include <json.hpp>

#include "fd6/errors.hpp"

namespace fd6 {

namespace {

std::string format(const char* fmt, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, fmt, v);
    return buf;
}

nlohmann::json parse_json(const std::string& text) {
    try {
        return nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(e.what(), e.byte, "valid JSON");
    }
}

[[noreturn]] void bad_report(const char* detail) {
    throw DomainError(std::string("malformed report JSON: ") + detail);
}

double require_number(const nlohmann::json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number())
        bad_report(key);
    return j[key].get<double>();
}

} // namespace

std::string to_string(NormKind kind) {
    switch (kind) {
    case NormKind::RichardsonDiff:
        return "richardson-diff";
    case NormKind::ExactError:
        return "exact-error";
    }
    throw ContractViolation("unknown norm kind enumerator");
}

NormKind norm_kind_from_string(const std::string& text) {
    if (text == "richardson-diff")
        return NormKind::RichardsonDiff;
    if (text == "exact-error")
        return NormKind::ExactError;
    throw DomainError("unknown norm kind '" + text +
                      "'; expected 'richardson-diff' or 'exact-error'");
}

void StructureReport::merge(const StructureReport& other) {
    worst_row_sum = std::max(worst_row_sum, other.worst_row_sum);
    sign_violations += other.sign_violations;
    if (other.worst_violation &&
        (!worst_violation ||
         other.worst_violation->magnitude > worst_violation->magnitude))
        worst_violation = other.worst_violation;
    comparison_minimum = std::min(comparison_minimum, other.comparison_minimum);
}

std::string to_csv(const ConvergenceReport& report) {
    std::string out = "N,h,norm,order\n";
    for (const auto& row : report.rows) {
        out += std::to_string(row.N);
        out += ',';
        out += format("%.17g", row.h);
        out += ',';
        out += format("%.5E", row.norm);
        out += ',';
        if (row.order)
            out += format("%.2f", *row.order);
        out += '\n';
    }
    return out;
}

std::string to_csv(const StructureReport& report) {
    std::string out = "field,value\n";
    out += "worst_row_sum," + format("%.17g", report.worst_row_sum) + "\n";
    out += "sign_violations," + std::to_string(report.sign_violations) + "\n";
    out += "comparison_minimum," + format("%.17g", report.comparison_minimum) +
           "\n";
    if (report.worst_violation) {
        const auto& v = *report.worst_violation;
        out += "worst_violation_k," + std::to_string(v.k) + "\n";
        out += "worst_violation_l," + std::to_string(v.l) + "\n";
        out += "worst_violation_h," + format("%.17g", v.h) + "\n";
        out += "worst_violation_a_eps," + format("%.17g", v.a_eps) + "\n";
        out += "worst_violation_b_eps," + format("%.17g", v.b_eps) + "\n";
        out += "worst_violation_magnitude," + format("%.17g", v.magnitude) +
               "\n";
    }
    return out;
}

std::string to_json_string(const ConvergenceReport& report) {
    nlohmann::json j;
    j["descriptor"] = report.descriptor;
    j["kind"] = to_string(report.kind);
    j["rows"] = nlohmann::json::array();
    for (const auto& row : report.rows) {
        nlohmann::json r;
        r["N"] = row.N;
        r["h"] = row.h;
        r["norm"] = row.norm;
        if (row.order)
            r["order"] = *row.order;
        else
            r["order"] = nullptr;
        r["plateau"] = row.plateau;
        j["rows"].push_back(std::move(r));
    }
    return j.dump(2) + "\n";
}

std::string to_json_string(const StructureReport& report) {
    nlohmann::json j;
    j["worst_row_sum"] = report.worst_row_sum;
    j["sign_violations"] = report.sign_violations;
    j["comparison_minimum"] = report.comparison_minimum;
    if (report.worst_violation) {
        const auto& v = *report.worst_violation;
        j["worst_violation"] = {{"k", v.k},
                                {"l", v.l},
                                {"h", v.h},
                                {"a_eps", v.a_eps},
                                {"b_eps", v.b_eps},
                                {"magnitude", v.magnitude}};
    } else {
        j["worst_violation"] = nullptr;
    }
    return j.dump(2) + "\n";
}

ConvergenceReport convergence_report_from_json_string(const std::string& text) {
    const nlohmann::json j = parse_json(text);
    if (!j.is_object() || !j.contains("descriptor") || !j.contains("kind") ||
        !j.contains("rows") || !j["rows"].is_array())
        bad_report("expected an object with descriptor, kind, and rows");
    ConvergenceReport report;
    report.descriptor = j["descriptor"].get<std::string>();
    report.kind = norm_kind_from_string(j["kind"].get<std::string>());
    for (const auto& r : j["rows"]) {
        ConvergenceRow row;
        row.N = static_cast<int>(require_number(r, "N"));
        row.h = require_number(r, "h");
        row.norm = require_number(r, "norm");
        if (!r.contains("order"))
            bad_report("order");
        if (!r["order"].is_null())
            row.order = r["order"].get<double>();
        if (!r.contains("plateau") || !r["plateau"].is_boolean())
            bad_report("plateau");
        row.plateau = r["plateau"].get<bool>();
        report.rows.push_back(row);
    }
    return report;
}

StructureReport structure_report_from_json_string(const std::string& text) {
    const nlohmann::json j = parse_json(text);
    if (!j.is_object() || !j.contains("worst_violation"))
        bad_report("expected an object with worst_violation");
    StructureReport report;
    report.worst_row_sum = require_number(j, "worst_row_sum");
    report.sign_violations =
        static_cast<long long>(require_number(j, "sign_violations"));
    report.comparison_minimum = require_number(j, "comparison_minimum");
    if (!j["worst_violation"].is_null()) {
        const auto& v = j["worst_violation"];
        SignViolation sv;
        sv.k = static_cast<int>(require_number(v, "k"));
        sv.l = static_cast<int>(require_number(v, "l"));
        sv.h = require_number(v, "h");
        sv.a_eps = require_number(v, "a_eps");
        sv.b_eps = require_number(v, "b_eps");
        sv.magnitude = require_number(v, "magnitude");
        report.worst_violation = sv;
    }
    return report;
}

} // namespace fd6
