// Copyright 2026 The causalis developers.
// Licensed under the Apache License, Version 2.0; see LICENSE for details.

#ifndef CAUSALIS_IO_HPP
#define CAUSALIS_IO_HPP

#include <string>

#include <json.hpp>

#include "causalis/comb.hpp"
#include "causalis/process.hpp"
#include "causalis/tomography.hpp"

namespace causalis {

using Json = nlohmann::json;

Json system_to_json(const SystemId& s);
SystemId system_from_json(const Json& j);

Json operator_to_json(const LabeledOperator& op);
LabeledOperator operator_from_json(const Json& j);

/// Choi JSON carries an optional "convention" field ("transposed", the
/// default and internal representation, or "standard"); standard-convention
/// payloads are transposed on load and save.
Json choi_to_json(const ChoiOperator& c, bool standard_convention = false);
ChoiOperator choi_from_json(const Json& j);

Json process_to_json(const ProcessMatrix& w);
ProcessMatrix process_from_json(const Json& j);

Json instrument_to_json(const Instrument& ins);
Instrument instrument_from_json(const Json& j);

Json encoders_to_json(const SubsystemEncoderPair& enc);
SubsystemEncoderPair encoders_from_json(const Json& j);

Json validation_report_to_json(const ProcessValidationReport& r);
Json signaling_result_to_json(const SignalingResult& r);
Json certificate_to_json(const NonseparabilityCertificate& c);
Json one_comb_to_json(const OneComb& c);
Json theorem2_report_to_json(const Theorem2Report& r);
Json tomography_report_to_json(const TomographyReport& r);

Json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const Json& j);

}  // namespace causalis

#endif
