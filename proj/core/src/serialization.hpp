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

#include <json.hpp>

#include "qembed/embedding.hpp"
#include "qembed/evaluation.hpp"

namespace qembed {

using Json = nlohmann::ordered_json;

Json embedding_to_json(const Embedding& emb);
Embedding embedding_from_json(const Json& j);

Json result_to_json(const MaxCliqueResult& result);
MaxCliqueResult result_from_json(const Json& j);

}  // namespace qembed
