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


#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string_view>

#include "qembed/evaluation.hpp"

namespace qembed {

enum class ReportKind {
    fig2a,    // x_norm,y_norm,family
    fig2b,    // x_norm,median_chain,family
    summary,  // per-family trend fits as JSON, then a verdict line
};

std::optional<ReportKind> parse_report_kind(std::string_view name);

void write_report(std::ostream& out, std::span<const MaxCliqueResult> results, ReportKind kind);

}  // namespace qembed
