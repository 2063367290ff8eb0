#include "ctvlab/io.hpp"

#include <fstream>

namespace ctvlab {

namespace {

Rat rat_at(const json& j)
{
    if (!j.is_string()) throw input_error("expected a rational string");
    return rat_from_string(j.get<std::string>());
}

json rat_json(const Rat& r) { return rat_to_string(r); }

int int_at(const json& j, const char* what)
{
    if (!j.is_number_integer()) throw input_error(std::string("expected an integer for ") + what);
    return j.get<int>();
}

} // namespace

json vec_to_json(const VecQ& v)
{
    json a = json::array();
    for (int i = 0; i < v.size(); ++i) a.push_back(rat_json(v(i)));
    return a;
}

VecQ vec_from_json(const json& j)
{
    if (!j.is_array()) throw input_error("expected an array of rationals");
    VecQ v(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<int>(i)) = rat_at(j[i]);
    return v;
}

json points_to_json(const MatQ& columns)
{
    json a = json::array();
    for (int c = 0; c < columns.cols(); ++c) a.push_back(vec_to_json(VecQ(columns.col(c))));
    return a;
}

MatQ points_from_json(const json& j)
{
    if (!j.is_array() || j.empty()) throw input_error("expected a nonempty array of points");
    VecQ first = vec_from_json(j[0]);
    MatQ m(first.size(), j.size());
    m.col(0) = first;
    for (std::size_t i = 1; i < j.size(); ++i) {
        VecQ v = vec_from_json(j[i]);
        if (v.size() != m.rows()) throw input_error("points have inconsistent dimensions");
        m.col(static_cast<int>(i)) = v;
    }
    return m;
}

json cloud_to_json(const MassCloud& cloud)
{
    json w = json::array();
    for (const Rat& x : cloud.weights) w.push_back(rat_json(x));
    return json{{"points", points_to_json(cloud.points)}, {"weights", w}};
}

MassCloud cloud_from_json(const json& j)
{
    MatQ pts = points_from_json(j.at("points"));
    std::vector<Rat> weights;
    for (const auto& w : j.at("weights")) weights.push_back(rat_at(w));
    return MassCloud(std::move(pts), std::move(weights));
}

json flat_to_json(const ComplexFlat& flat)
{
    return json{{"d", flat.space.d},
                {"base", vec_to_json(flat.base)},
                {"direction_basis", points_to_json(flat.directions)},
                {"kind", json{{"type", ComplexFlat::kind_name(flat.kind)}, {"k", flat.k}}}};
}

ComplexFlat flat_from_json(const json& j)
{
    const int d = int_at(j.at("d"), "flat d");
    ComplexStructure cs(d);
    VecQ base = vec_from_json(j.at("base"));
    MatQ dirs = j.at("direction_basis").empty() ? MatQ(2 * d, 0)
                                                : points_from_json(j.at("direction_basis"));
    const std::string type = j.at("kind").at("type").get<std::string>();
    const int k = int_at(j.at("kind").at("k"), "flat k");
    ComplexFlat::Kind kind;
    if (type == "complex") kind = ComplexFlat::Kind::complex_k;
    else if (type == "complex-plus-line") kind = ComplexFlat::Kind::complex_plus_line;
    else throw input_error("unknown flat kind: " + type);
    return ComplexFlat{cs, base, dirs, kind, k};
}

json depth_value_to_json(const DepthValue& dv)
{
    return json{{"value", rat_json(dv.value)},
                {"witness_normal", vec_to_json(dv.witness_normal)},
                {"witness_offset", rat_json(dv.witness_offset)}};
}

DepthValue depth_value_from_json(const json& j)
{
    return DepthValue{rat_at(j.at("value")), vec_from_json(j.at("witness_normal")),
                      rat_at(j.at("witness_offset"))};
}

std::vector<MassCloud> InstanceFile::as_measures() const
{
    if (kind == "measures") return measures;
    if (kind == "gadget" && gadget) return gadget->measures;
    throw input_error("instance of kind '" + kind + "' does not provide plain measures");
}

json instance_to_json(const InstanceFile& f)
{
    json j{{"schema_version", f.schema_version}, {"kind", f.kind}, {"provenance", f.provenance}};
    if (f.kind == "measures") {
        json ms = json::array();
        for (const auto& m : f.measures) ms.push_back(cloud_to_json(m));
        j["payload"] = json{{"d", f.d}, {"measures", ms}};
    } else if (f.kind == "tverberg") {
        if (!f.tverberg) throw input_error("tverberg instance file without payload");
        j["payload"] = tv_instance_to_json(*f.tverberg);
    } else if (f.kind == "gadget") {
        if (!f.gadget) throw input_error("gadget instance file without payload");
        j["payload"] = gadget_to_json(*f.gadget);
    } else {
        throw input_error("unknown instance kind: " + f.kind);
    }
    return j;
}

InstanceFile instance_from_json(const json& j)
{
    InstanceFile f;
    f.schema_version = int_at(j.at("schema_version"), "schema_version");
    if (f.schema_version != kSchemaVersion)
        throw input_error("unsupported schema version " + std::to_string(f.schema_version));
    f.kind = j.at("kind").get<std::string>();
    f.provenance = j.value("provenance", json::object());
    const json& payload = j.at("payload");
    if (f.kind == "measures") {
        f.d = int_at(payload.at("d"), "d");
        for (const auto& m : payload.at("measures")) f.measures.push_back(cloud_from_json(m));
    } else if (f.kind == "tverberg") {
        f.tverberg = tv_instance_from_json(payload);
        f.d = f.tverberg->d;
    } else if (f.kind == "gadget") {
        f.gadget = gadget_from_json(payload);
        f.d = f.gadget->d;
    } else {
        throw input_error("unknown instance kind: " + f.kind);
    }
    return f;
}

json tv_instance_to_json(const TvInstance& inst)
{
    json sets = json::array();
    for (std::size_t i = 0; i < inst.sets.size(); ++i) {
        json s{{"points", points_to_json(inst.sets[i])}};
        if (!inst.colors.empty() && !inst.colors[i].empty()) s["colors"] = inst.colors[i];
        sets.push_back(s);
    }
    return json{{"d", inst.d},
                {"k", inst.k},
                {"variant", inst.variant == TvInstance::Variant::complex ? "complex" : "complex-plus-line"},
                {"part_counts", inst.part_counts},
                {"sets", sets}};
}

TvInstance tv_instance_from_json(const json& j)
{
    TvInstance inst;
    inst.d = int_at(j.at("d"), "d");
    inst.k = int_at(j.at("k"), "k");
    const std::string variant = j.at("variant").get<std::string>();
    if (variant == "complex") inst.variant = TvInstance::Variant::complex;
    else if (variant == "complex-plus-line") inst.variant = TvInstance::Variant::complex_plus_line;
    else throw input_error("unknown tverberg variant: " + variant);
    for (const auto& r : j.at("part_counts")) inst.part_counts.push_back(int_at(r, "part count"));
    bool any_colors = false;
    for (const auto& s : j.at("sets")) {
        inst.sets.push_back(points_from_json(s.at("points")));
        if (s.contains("colors")) {
            any_colors = true;
            inst.colors.push_back(s.at("colors").get<std::vector<int>>());
        } else {
            inst.colors.push_back({});
        }
    }
    if (!any_colors) inst.colors.clear();
    inst.validate();
    return inst;
}

json gadget_to_json(const GadgetInstance& g)
{
    json ms = json::array();
    for (const auto& m : g.measures) ms.push_back(cloud_to_json(m));
    return json{{"construction", g.construction},
                {"d", g.d},
                {"k", g.k},
                {"epsilon", rat_json(g.epsilon)},
                {"battery_size", g.battery_size},
                {"measures", ms}};
}

GadgetInstance gadget_from_json(const json& j)
{
    GadgetInstance g;
    g.construction = j.at("construction").get<std::string>();
    g.d = int_at(j.at("d"), "d");
    g.k = int_at(j.at("k"), "k");
    g.epsilon = rat_at(j.at("epsilon"));
    g.battery_size = int_at(j.at("battery_size"), "battery_size");
    for (const auto& m : j.at("measures")) g.measures.push_back(cloud_from_json(m));
    return g;
}

json certificate_to_json(const CertificateFile& f)
{
    return json{{"schema_version", f.schema_version},
                {"kind", f.kind},
                {"payload", f.payload},
                {"verifier", f.verifier},
                {"metadata", f.metadata}};
}

CertificateFile certificate_from_json(const json& j)
{
    CertificateFile f;
    f.schema_version = int_at(j.at("schema_version"), "schema_version");
    if (f.schema_version != kSchemaVersion)
        throw input_error("unsupported schema version " + std::to_string(f.schema_version));
    f.kind = j.at("kind").get<std::string>();
    f.payload = j.at("payload");
    f.verifier = j.value("verifier", json::object());
    f.metadata = j.value("metadata", json::object());
    return f;
}

namespace {

json trace_to_json(const SearchTrace& t)
{
    return json{{"seed", t.seed}, {"samples", t.samples}, {"chart", t.chart}};
}

SearchTrace trace_from_json(const json& j)
{
    SearchTrace t;
    t.seed = j.value("seed", 0ULL);
    t.samples = j.value("samples", 0L);
    t.chart = j.value("chart", "");
    return t;
}

} // namespace

json transversal_cert_to_payload(const TransversalCert& cert, int d, int k, bool odd_family)
{
    json depths = json::array();
    for (const auto& dv : cert.depths) depths.push_back(depth_value_to_json(dv));
    return json{{"d", d},
                {"k", k},
                {"family", odd_family ? "complex-plus-line" : "complex"},
                {"flat", flat_to_json(cert.flat)},
                {"depths", depths},
                {"bound", rat_json(cert.bound)},
                {"exploratory", cert.exploratory},
                {"trace", trace_to_json(cert.trace)}};
}

TransversalCert transversal_cert_from_payload(const json& payload)
{
    TransversalCert cert{flat_from_json(payload.at("flat")),
                         {},
                         rat_at(payload.at("bound")),
                         trace_from_json(payload.value("trace", json::object())),
                         payload.value("exploratory", false)};
    for (const auto& dv : payload.at("depths")) cert.depths.push_back(depth_value_from_json(dv));
    return cert;
}

json flag_cert_to_payload(const FlagCert& cert, int d, int k)
{
    json flats = json::array(), depths = json::array(), bounds = json::array();
    for (const auto& f : cert.flats) flats.push_back(flat_to_json(f));
    for (const auto& level : cert.depths) {
        json l = json::array();
        for (const auto& dv : level) l.push_back(depth_value_to_json(dv));
        depths.push_back(l);
    }
    for (const auto& b : cert.bounds) bounds.push_back(rat_json(b));
    return json{{"d", d},         {"k", k},           {"flats", flats},
                {"depths", depths}, {"bounds", bounds}, {"trace", trace_to_json(cert.trace)}};
}

FlagCert flag_cert_from_payload(const json& payload)
{
    FlagCert cert;
    for (const auto& f : payload.at("flats")) cert.flats.push_back(flat_from_json(f));
    for (const auto& level : payload.at("depths")) {
        std::vector<DepthValue> l;
        for (const auto& dv : level) l.push_back(depth_value_from_json(dv));
        cert.depths.push_back(std::move(l));
    }
    for (const auto& b : payload.at("bounds")) cert.bounds.push_back(rat_at(b));
    cert.trace = trace_from_json(payload.value("trace", json::object()));
    return cert;
}

json tverberg_cert_to_payload(const TverbergCert& cert)
{
    json witnesses = json::array();
    for (const auto& per_set : cert.witnesses) {
        json s = json::array();
        for (const auto& part : per_set) {
            json p = json::array();
            for (const Rat& l : part) p.push_back(rat_json(l));
            s.push_back(p);
        }
        witnesses.push_back(s);
    }
    return json{{"flat", flat_to_json(cert.flat)},
                {"q", vec_to_json(cert.q)},
                {"partitions", cert.partitions},
                {"witnesses", witnesses},
                {"exploratory", cert.exploratory},
                {"trace", trace_to_json(cert.trace)}};
}

TverbergCert tverberg_cert_from_payload(const json& payload, const TvInstance&)
{
    TverbergCert cert{flat_from_json(payload.at("flat")),
                      vec_from_json(payload.at("q")),
                      payload.at("partitions").get<std::vector<std::vector<std::vector<int>>>>(),
                      {},
                      trace_from_json(payload.value("trace", json::object())),
                      payload.value("exploratory", false)};
    for (const auto& per_set : payload.at("witnesses")) {
        std::vector<std::vector<Rat>> s;
        for (const auto& part : per_set) {
            std::vector<Rat> lambdas;
            for (const auto& l : part) lambdas.push_back(rat_at(l));
            s.push_back(std::move(lambdas));
        }
        cert.witnesses.push_back(std::move(s));
    }
    return cert;
}

std::string canonical_dump(const json& j) { return j.dump(2) + "\n"; }

json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw input_error("cannot open file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw input_error("malformed JSON in " + path + ": " + e.what());
    }
    return j;
}

void write_text_file(const std::string& path, const std::string& content)
{
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw input_error("cannot write file: " + path);
    out << content;
}

} // namespace ctvlab
