// SPDX-License-Identifier: Apache-2.0
//
// Stage dispatch across transports. All transports speak the request /
// response envelope of stages.hpp:
//
//   mock        in-process deterministic generators
//   subprocess  command template with {in}/{out} file substitution;
//               a nonzero exit or missing output file is a failure
//   http        POST of the request envelope, response envelope back
//
// Failures retry with exponential backoff (backoff_base_s doubling per
// attempt) up to endpoint.retries; what remains is a StageError carrying the
// cause chain.

#pragma once

#include <filesystem>

#include "virtfusion/pipeline/mocks.hpp"
#include "virtfusion/pipeline/stages.hpp"

namespace virtfusion::pipeline {

/// Transport-specific dispatch of one serialized request envelope; returns
/// the serialized response envelope. `work_dir` hosts the temp files of
/// subprocess endpoints.
std::string call_stage(const ServiceEndpoint& endpoint,
                       std::string_view request_envelope,
                       MockDispatcher& mock,
                       const std::filesystem::path& work_dir = ".");

}  // namespace virtfusion::pipeline
