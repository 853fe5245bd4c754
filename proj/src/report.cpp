#include "jtwist/report.hpp"

#include <algorithm>

#include <json.hpp>

namespace jtwist {

std::string toLine(const CheckReport& r) {
    std::string line = r.pass ? "pass " : "FAIL ";
    line += r.check;
    if (!r.family.empty()) line += " family=" + r.family;
    if (!r.u.empty()) line += " u=" + r.u;
    line += " N=" + std::to_string(r.order);
    if (r.firstResidualOrder) line += " first_residual_order=" + std::to_string(*r.firstResidualOrder);
    if (r.maxTerms > 0) line += " max_terms=" + std::to_string(r.maxTerms);
    if (!r.detail.empty()) line += " (" + r.detail + ")";
    return line;
}

void sortReports(std::vector<CheckReport>& reports) {
    std::stable_sort(reports.begin(), reports.end(), [](const CheckReport& a, const CheckReport& b) {
        if (a.check != b.check) return a.check < b.check;
        if (a.family != b.family) return a.family < b.family;
        if (a.u != b.u) return a.u < b.u;
        return a.order < b.order;
    });
}

std::string toJson(const std::vector<CheckReport>& reports, bool pretty) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    std::size_t passed = 0;
    for (const auto& r : reports) {
        nlohmann::ordered_json j;
        j["check"] = r.check;
        j["family"] = r.family.empty() ? nlohmann::ordered_json() : nlohmann::ordered_json(r.family);
        j["u"] = r.u.empty() ? nlohmann::ordered_json() : nlohmann::ordered_json(r.u);
        j["N"] = r.order;
        j["status"] = r.pass ? "pass" : "fail";
        if (r.firstResidualOrder)
            j["first_residual_order"] = *r.firstResidualOrder;
        else
            j["first_residual_order"] = nullptr;
        j["max_terms"] = r.maxTerms;
        if (!r.detail.empty()) j["detail"] = r.detail;
        arr.push_back(std::move(j));
        if (r.pass) ++passed;
    }
    nlohmann::ordered_json top;
    top["checks"] = std::move(arr);
    top["summary"] = {{"total", reports.size()},
                      {"passed", passed},
                      {"failed", reports.size() - passed}};
    return pretty ? top.dump(2) : top.dump();
}

}  // namespace jtwist
