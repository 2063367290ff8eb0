#pragma once

#include <json.hpp>

#include "ctvlab/gadgets.hpp"
#include "ctvlab/transversal.hpp"
#include "ctvlab/tverberg.hpp"

namespace ctvlab {

using json = nlohmann::json;

// All scalars serialize as decimal "num/den" strings; floating point never
// enters an interchange file.  Objects are emitted with sorted keys, so a
// fixed payload always dumps to identical bytes.

json vec_to_json(const VecQ& v);
VecQ vec_from_json(const json& j);

json points_to_json(const MatQ& columns);
MatQ points_from_json(const json& j);

json cloud_to_json(const MassCloud& cloud);
MassCloud cloud_from_json(const json& j);

json flat_to_json(const ComplexFlat& flat);
ComplexFlat flat_from_json(const json& j);

json depth_value_to_json(const DepthValue& dv);
DepthValue depth_value_from_json(const json& j);

// ---- instance files ------------------------------------------------------

inline constexpr int kSchemaVersion = 1;

struct InstanceFile {
    int schema_version = kSchemaVersion;
    std::string kind; // "measures" | "tverberg" | "gadget"
    int d = 0;
    std::vector<MassCloud> measures;      // kind == measures
    std::optional<TvInstance> tverberg;   // kind == tverberg
    std::optional<GadgetInstance> gadget; // kind == gadget
    json provenance = json::object();

    // Measures usable by the transversal searches, whatever the kind.
    std::vector<MassCloud> as_measures() const;
};

json instance_to_json(const InstanceFile& f);
InstanceFile instance_from_json(const json& j);

json tv_instance_to_json(const TvInstance& inst);
TvInstance tv_instance_from_json(const json& j);

json gadget_to_json(const GadgetInstance& g);
GadgetInstance gadget_from_json(const json& j);

// ---- certificate files ----------------------------------------------------

struct CertificateFile {
    int schema_version = kSchemaVersion;
    std::string kind; // "transversal" | "odd-transversal" | "flag" | "tverberg"
    json payload = json::object();
    json verifier = json::object();
    json metadata = json::object(); // timing and tool info; excluded from
                                    // byte-determinism comparisons
};

json certificate_to_json(const CertificateFile& f);
CertificateFile certificate_from_json(const json& j);

json transversal_cert_to_payload(const TransversalCert& cert, int d, int k, bool odd_family);
TransversalCert transversal_cert_from_payload(const json& payload);

json flag_cert_to_payload(const FlagCert& cert, int d, int k);
FlagCert flag_cert_from_payload(const json& payload);

json tverberg_cert_to_payload(const TverbergCert& cert);
TverbergCert tverberg_cert_from_payload(const json& payload, const TvInstance& instance);

// ---- files -----------------------------------------------------------------

std::string canonical_dump(const json& j);
json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

} // namespace ctvlab
