// Copyright 2026 The qembed Authors
//
//    Licensed under the Apache License, Version 2.0 (the "License");
//    you may not use this file except in compliance with the License.
//    You may obtain a copy of the License at
//
//        http://www.apache.org/licenses/LICENSE-2.0
//
//    Unless required by applicable law or agreed to in writing, software
//    distributed under the License is distributed on an "AS IS" BASIS,
//    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//    See the License for the specific language governing permissions and
//    limitations under the License.


#include "qembed/report.hpp"

#include <ostream>
#include <string>

#include "qembed/errors.hpp"
#include "serialization.hpp"

namespace qembed {

std::optional<ReportKind> parse_report_kind(std::string_view name) {
    if (name == "fig2a") return ReportKind::fig2a;
    if (name == "fig2b") return ReportKind::fig2b;
    if (name == "summary") return ReportKind::summary;
    return std::nullopt;
}

namespace {

void write_summary(std::ostream& out, std::span<const NormalizedPoint> points) {
    Json j;
    std::optional<TrendSummary> fits[2];
    const QpuFamily families[2] = {QpuFamily::havel_hakimi, QpuFamily::zephyr};
    for (int i = 0; i < 2; ++i) {
        Json entry;
        try {
            const TrendSummary s = trend_summary(points, families[i]);
            entry["points"] = s.points;
            entry["slope"] = s.slope;
            entry["intercept"] = s.intercept;
            entry["r_squared"] = s.r_squared;
            entry["quadratic_coefficient"] = s.quadratic_coefficient;
            entry["concavity_indicator"] = s.concavity_indicator;
            entry["mean_median_chain"] = s.mean_median_chain;
            fits[i] = s;
        } catch (const InputError& e) {
            entry["error"] = e.what();
        }
        j[family_name(families[i])] = std::move(entry);
    }
    out << j.dump() << '\n';

    std::string verdict = "verdict:";
    for (int i = 0; i < 2; ++i) {
        verdict += std::string(i == 0 ? " " : "; ") + family_name(families[i]);
        if (fits[i]) {
            verdict += " slope=" + format_double(fits[i]->slope) +
                       " r2=" + format_double(fits[i]->r_squared) +
                       " mean_median_chain=" + format_double(fits[i]->mean_median_chain);
        } else {
            verdict += " insufficient points";
        }
    }
    if (fits[0] && fits[1]) {
        const bool more_linear = fits[0]->r_squared >= fits[1]->r_squared;
        const bool shorter = fits[0]->mean_median_chain <= fits[1]->mean_median_chain;
        verdict += std::string("; havel_hakimi fit is ") +
                   (more_linear ? "at least as linear as" : "less linear than") +
                   " zephyr; havel_hakimi median chains are " +
                   (shorter ? "no longer" : "longer") + " than zephyr";
    }
    out << verdict << '\n';
}

}  // namespace

void write_report(std::ostream& out, std::span<const MaxCliqueResult> results, ReportKind kind) {
    const std::vector<NormalizedPoint> points = normalize(results);
    switch (kind) {
        case ReportKind::fig2a:
            out << "x_norm,y_norm,family\n";
            for (const auto& p : points)
                out << format_double(p.x) << ',' << format_double(p.y) << ',' << family_name(p.family) << '\n';
            break;
        case ReportKind::fig2b:
            out << "x_norm,median_chain,family\n";
            for (const auto& p : points)
                out << format_double(p.x) << ',' << format_double(p.median_chain) << ','
                    << family_name(p.family) << '\n';
            break;
        case ReportKind::summary:
            write_summary(out, points);
            break;
    }
}

}  // namespace qembed
