#ifndef PROBEQ_JSON_IO_HPP
#define PROBEQ_JSON_IO_HPP

#include <string>

#include <json.hpp>

#include "probeq/certificates.hpp"
#include "probeq/coupling.hpp"
#include "probeq/regret.hpp"

namespace probeq {

using Json = nlohmann::json;

// All exact values serialize as strings so round-trips are bit-exact.

Json event_to_json(const Event& e);
Event event_from_json(const Json& j);

Json rv_to_json(const SimpleRV& rv);
SimpleRV rv_from_json(const Json& j);

Json dist_to_json(const Distribution& d);
Distribution dist_from_json(const Json& j);

Json psi_to_json(const RegretFunction& psi);
RegretFunction psi_from_json(const Json& j);

Json functional_to_json(const RegretFunctional& v);
RegretFunctional functional_from_json(const Json& j);

Json certificate_to_json(const EquivalenceCertificate& cert);
EquivalenceCertificate certificate_from_json(const Json& j);

Json report_to_json(const VerificationReport& report);
Json lottery_to_json(const RegretLottery& lottery, int decimal_digits);
Json preference_to_json(const Preference& pref, int decimal_digits);
Json coupling_to_json(const Coupling& coupling);
Json skorokhod_report_to_json(const SkorokhodReport& report, int decimal_digits);
Json fosd_preference_report_to_json(const FosdPreferenceReport& report,
                                    int decimal_digits);

std::string to_string(CaseKind kind);
std::string to_string(FosdOrder order);
std::string to_string(PreferVerdict verdict);

Json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const Json& j);

}  // namespace probeq

#endif
