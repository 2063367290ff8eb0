// ctvlab: exact certificates for complex central transversals, Tverberg-type
// partitions, Grassmannian cohomology checks, and index-ideal survival tests.

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <iostream>

#include "ctvlab/fh.hpp"
#include "ctvlab/gen.hpp"
#include "ctvlab/io.hpp"
#include "ctvlab/schur.hpp"
#include "ctvlab/svg.hpp"

namespace {

using namespace ctvlab;

constexpr const char* kToolVersion = "ctvlab 0.1.0";

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitBudget = 2;

long default_budget()
{
    if (const char* env = std::getenv("CTVLAB_BUDGET")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end && *end == '\0' && v > 0) return v;
        std::cerr << "warning: ignoring malformed CTVLAB_BUDGET\n";
    }
    return 100000;
}

struct CommonFlags {
    std::uint64_t seed = 0;
    long budget = default_budget();
    int workers = 0;
    bool recheck = false;
    std::string out;

    void attach(CLI::App* cmd)
    {
        cmd->add_option("--seed", seed, "deterministic seed");
        cmd->add_option("--budget", budget, "chart sample budget");
        cmd->add_option("--workers", workers, "worker threads (0 = available parallelism)");
        cmd->add_flag("--recheck", recheck, "recompute verifier results on load");
        cmd->add_option("--out", out, "output file (default: stdout)");
    }

    SearchConfig config() const
    {
        SearchConfig c;
        c.budget = budget;
        c.workers = workers;
        c.seed = seed;
        return c;
    }
};

void emit(const CommonFlags& flags, const json& j)
{
    std::string text = canonical_dump(j);
    if (flags.out.empty()) std::cout << text;
    else write_text_file(flags.out, text);
}

json poly_to_json(const Poly& p)
{
    json terms = json::array();
    for (const auto& [mono, c] : p.terms)
        terms.push_back(json{{"exponents", mono}, {"coefficient", c.str()}});
    return json{{"nvars", p.nvars}, {"terms", terms}};
}

Poly poly_from_json(const json& j, unsigned modulus = 0)
{
    Poly p = Poly::zero(j.at("nvars").get<int>());
    for (const auto& t : j.at("terms"))
        p.add_term(t.at("exponents").get<std::vector<int>>(), Int(t.at("coefficient").get<std::string>()),
                   modulus);
    return p;
}

json ideal_to_json(const IdealSpec& spec)
{
    json j{{"variables", spec.variables},
           {"degrees", spec.degrees},
           {"modulus", spec.modulus},
           {"kind", spec.kind == IdealSpec::Kind::monomial ? "monomial" : "principal"}};
    if (spec.kind == IdealSpec::Kind::monomial) j["generators"] = spec.monomial_generators;
    else j["generator"] = poly_to_json(spec.principal);
    return j;
}

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    long ms() const
    {
        return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() -
                                                                     start)
            .count();
    }
};

json metadata(const Timer& timer)
{
    return json{{"tool_version", kToolVersion}, {"timing_ms", timer.ms()}};
}

std::vector<int> parse_int_list(const std::string& text)
{
    std::vector<int> out;
    std::string cur;
    for (char ch : text + ",") {
        if (ch == ',') {
            if (!cur.empty()) out.push_back(std::stoi(cur));
            cur.clear();
        } else {
            cur += ch;
        }
    }
    return out;
}

int write_transversal_outcome(const CommonFlags& flags, const SearchOutcome& outcome,
                              const std::vector<MassCloud>& measures, int d, int k, bool odd,
                              const Timer& timer, const std::string& svg_path)
{
    if (const auto* cert = std::get_if<TransversalCert>(&outcome)) {
        std::string diag;
        const bool verified = verify_transversal(*cert, measures, d, k, odd, &diag);
        CertificateFile file;
        file.kind = odd ? "odd-transversal" : "transversal";
        file.payload = transversal_cert_to_payload(*cert, d, k, odd);
        file.verifier = json{{"verified", verified}};
        if (!verified) file.verifier["diagnostic"] = diag;
        file.metadata = metadata(timer);
        emit(flags, certificate_to_json(file));
        if (!svg_path.empty()) write_text_file(svg_path, transversal_svg(measures, *cert));
        if (!verified) {
            std::cerr << "internal verification failed: " << diag << "\n";
            return kExitInput;
        }
        return kExitOk;
    }
    const auto& be = std::get<BestEffort>(outcome);
    json report{{"budget_exhausted", true},
                {"samples", be.samples},
                {"best_min_depth", rat_to_string(be.best_min_depth)}};
    if (be.flat) report["best_flat"] = flat_to_json(*be.flat);
    CertificateFile file;
    file.kind = odd ? "odd-transversal" : "transversal";
    file.payload = report;
    file.verifier = json{{"verified", false}, {"diagnostic", "budget exhausted"}};
    file.metadata = metadata(timer);
    emit(flags, certificate_to_json(file));
    std::cerr << "budget exhausted; best-effort report written\n";
    return kExitBudget;
}

int run_tverberg_command(const CommonFlags& flags, const std::string& instance_path,
                         const std::string& svg_path, TvInstance::Variant want_variant,
                         bool want_colored)
{
    Timer timer;
    InstanceFile inst = instance_from_json(read_json_file(instance_path));
    if (!inst.tverberg) throw input_error("instance file does not hold a tverberg payload");
    TvInstance tv = *inst.tverberg;
    if (tv.variant != want_variant)
        throw input_error("instance variant does not match the subcommand");
    if (want_colored && !tv.colored())
        throw input_error("tverberg-colorful needs a colored instance");

    TvOutcome outcome = search_tv(tv, flags.config());
    if (const auto* cert = std::get_if<TverbergCert>(&outcome)) {
        std::string diag;
        const bool verified = verify_tv(*cert, tv, &diag);
        CertificateFile file;
        file.kind = "tverberg";
        file.payload = tverberg_cert_to_payload(*cert);
        file.verifier = json{{"verified", verified}};
        if (!verified) file.verifier["diagnostic"] = diag;
        file.metadata = metadata(timer);
        emit(flags, certificate_to_json(file));
        if (!svg_path.empty()) write_text_file(svg_path, tverberg_svg(tv, *cert));
        return verified ? kExitOk : kExitInput;
    }
    const auto& be = std::get<TvBestEffort>(outcome);
    CertificateFile file;
    file.kind = "tverberg";
    file.payload = json{{"budget_exhausted", true},
                        {"samples", be.samples},
                        {"best_margin", rat_to_string(be.best_margin)}};
    file.verifier = json{{"verified", false}, {"diagnostic", "budget exhausted"}};
    file.metadata = metadata(timer);
    emit(flags, certificate_to_json(file));
    std::cerr << "budget exhausted; best-effort report written\n";
    return kExitBudget;
}

int dispatch(int argc, char** argv)
{
    CLI::App app{"exact transversal, Tverberg, cohomology and index computations"};
    app.require_subcommand(1);

    // ---- generate ----------------------------------------------------------
    auto* gen_cmd = app.add_subcommand("generate", "emit a seeded instance file");
    CommonFlags gen_flags;
    gen_flags.attach(gen_cmd);
    std::string gen_kind = "measures", gen_sizes = "14,16", gen_genericity = "generic";
    std::string gen_parts = "2,2", gen_variant = "complex";
    int gen_d = 2, gen_k = 1;
    bool gen_colored = false;
    gen_cmd->add_option("--kind", gen_kind, "measures | tverberg");
    gen_cmd->add_option("--d", gen_d);
    gen_cmd->add_option("--k", gen_k);
    gen_cmd->add_option("--sizes", gen_sizes, "points per measure, comma separated");
    gen_cmd->add_option("--parts", gen_parts, "tverberg part counts r_i");
    gen_cmd->add_option("--variant", gen_variant, "complex | complex-plus-line");
    gen_cmd->add_option("--genericity", gen_genericity, "generic | clustered");
    gen_cmd->add_flag("--colored", gen_colored, "attach a coloring (tverberg)");

    // ---- searches -----------------------------------------------------------
    struct SearchCmd {
        CLI::App* cmd = nullptr;
        CommonFlags flags;
        std::string instance, svg;
        int k = 1;
    };
    auto make_search = [&](const char* name, const char* help) {
        SearchCmd sc;
        sc.cmd = app.add_subcommand(name, help);
        sc.flags.attach(sc.cmd);
        sc.cmd->add_option("--instance", sc.instance)->required();
        sc.cmd->add_option("--k", sc.k, "flat complex dimension");
        sc.cmd->add_option("--svg", sc.svg, "also write an SVG plot");
        return sc;
    };
    SearchCmd tr = make_search("transversal", "search a complex central k-transversal");
    SearchCmd fl = make_search("flag", "search a nested transversal flag");
    SearchCmd od = make_search("odd-transversal", "search a complex-plus-line transversal");

    auto* tv_cmd = app.add_subcommand("tverberg", "search a Tverberg partition certificate");
    auto* tvc_cmd = app.add_subcommand("tverberg-colorful", "colorful variant (rainbow parts)");
    auto* tvo_cmd = app.add_subcommand("tverberg-odd", "complex-plus-line variant");
    CommonFlags tv_flags, tvc_flags, tvo_flags;
    std::string tv_instance, tvc_instance, tvo_instance, tv_svg, tvc_svg, tvo_svg;
    for (auto [cmd, fl2, inst, svg] :
         {std::tuple{tv_cmd, &tv_flags, &tv_instance, &tv_svg},
          std::tuple{tvc_cmd, &tvc_flags, &tvc_instance, &tvc_svg},
          std::tuple{tvo_cmd, &tvo_flags, &tvo_instance, &tvo_svg}}) {
        fl2->attach(cmd);
        cmd->add_option("--instance", *inst)->required();
        cmd->add_option("--svg", *svg);
    }

    // ---- cohomology ---------------------------------------------------------
    auto* coh = app.add_subcommand("cohomology", "Grassmannian cohomology operations");
    coh->require_subcommand(1);
    CommonFlags coh_flags;
    int coh_k = 2, coh_d = 4, coh_n = 1, coh_m = 1;
    unsigned coh_p = 2;
    std::string coh_in;
    auto* ideal_cmd = coh->add_subcommand("ideal", "presentation ideal generators of G_k(C^d)");
    coh_flags.attach(ideal_cmd);
    ideal_cmd->add_option("--k", coh_k)->required();
    ideal_cmd->add_option("--d", coh_d)->required();
    auto* euler_cmd = coh->add_subcommand("euler-power", "top Chern class power mod p");
    coh_flags.attach(euler_cmd);
    euler_cmd->add_option("--n", coh_n)->required();
    euler_cmd->add_option("--d", coh_d)->required();
    euler_cmd->add_option("--m", coh_m)->required();
    euler_cmd->add_option("--p", coh_p)->required();
    auto* split_cmd = coh->add_subcommand("splitting", "pull back a Chern polynomial to u-variables");
    coh_flags.attach(split_cmd);
    split_cmd->add_option("--k", coh_k)->required();
    split_cmd->add_option("--in", coh_in, "polynomial JSON file ('-' = stdin)")->required();
    auto* proj_cmd = coh->add_subcommand("projectivization", "mod-2 Euler power on the projectivization");
    coh_flags.attach(proj_cmd);
    proj_cmd->add_option("--n", coh_n)->required();
    proj_cmd->add_option("--d", coh_d)->required();
    proj_cmd->add_option("--m", coh_m)->required();

    // ---- fh-index -----------------------------------------------------------
    auto* fh_cmd = app.add_subcommand("fh-index", "key-monomial survival report");
    CommonFlags fh_flags;
    fh_flags.attach(fh_cmd);
    std::string fh_group = "circle", fh_exponents;
    int fh_n = 1, fh_d = 1;
    fh_cmd->add_option("--group", fh_group, "circle | z2")->required();
    fh_cmd->add_option("--n", fh_n)->required();
    fh_cmd->add_option("--d", fh_d)->required();
    fh_cmd->add_option("--exponents", fh_exponents, "z2 exponents a_i, comma separated");

    // ---- gadget -------------------------------------------------------------
    auto* gadget_cmd = app.add_subcommand("gadget", "emit an optimality gadget instance");
    CommonFlags gadget_flags;
    gadget_flags.attach(gadget_cmd);
    std::string gadget_construction = "tight-depth", gadget_eps = "1/16";
    int gadget_d = 2, gadget_k = 1, gadget_battery = 8;
    gadget_cmd->add_option("--construction", gadget_construction, "tight-depth | too-many-measures");
    gadget_cmd->add_option("--d", gadget_d);
    gadget_cmd->add_option("--k", gadget_k);
    gadget_cmd->add_option("--epsilon", gadget_eps);
    gadget_cmd->add_option("--battery", gadget_battery);

    // ---- verify / plot ------------------------------------------------------
    auto* verify_cmd = app.add_subcommand("verify", "recheck a certificate against an instance");
    CommonFlags verify_flags;
    verify_flags.attach(verify_cmd);
    std::string verify_cert, verify_instance;
    verify_cmd->add_option("cert", verify_cert)->required();
    verify_cmd->add_option("--instance", verify_instance)->required();

    auto* plot_cmd = app.add_subcommand("plot", "render a certificate to SVG");
    CommonFlags plot_flags;
    plot_flags.attach(plot_cmd);
    std::string plot_cert, plot_instance;
    plot_cmd->add_option("cert", plot_cert)->required();
    plot_cmd->add_option("--instance", plot_instance)->required();

    CLI11_PARSE(app, argc, argv);

    if (gen_cmd->parsed()) {
        Timer timer;
        InstanceFile file;
        file.kind = gen_kind;
        Genericity g = genericity_from_string(gen_genericity);
        if (gen_kind == "measures") {
            file.d = gen_d;
            file.measures = generate_measures(gen_d, parse_int_list(gen_sizes), gen_flags.seed, g, gen_k);
        } else if (gen_kind == "tverberg") {
            TvInstance::Variant v = gen_variant == "complex-plus-line"
                                        ? TvInstance::Variant::complex_plus_line
                                        : TvInstance::Variant::complex;
            file.tverberg = generate_tverberg(gen_d, gen_k, parse_int_list(gen_parts), gen_flags.seed, g,
                                              v, gen_colored);
            file.d = gen_d;
        } else {
            throw input_error("generate supports kinds 'measures' and 'tverberg'; use the gadget "
                              "subcommand for gadgets");
        }
        file.provenance = json{{"seed", gen_flags.seed},
                               {"generator", gen_kind},
                               {"genericity", gen_genericity},
                               {"tool_version", kToolVersion}};
        emit(gen_flags, instance_to_json(file));
        return kExitOk;
    }

    for (SearchCmd* sc : {&tr, &fl, &od}) {
        if (!sc->cmd->parsed()) continue;
        Timer timer;
        InstanceFile inst = instance_from_json(read_json_file(sc->instance));
        std::vector<MassCloud> measures = inst.as_measures();
        const int d = inst.d;
        if (sc == &fl) {
            FlagOutcome outcome = search_flag_transversal(measures, d, sc->k, sc->flags.config());
            if (const auto* cert = std::get_if<FlagCert>(&outcome)) {
                std::string diag;
                const bool ok = verify_flag(*cert, measures, d, sc->k, &diag);
                CertificateFile file;
                file.kind = "flag";
                file.payload = flag_cert_to_payload(*cert, d, sc->k);
                file.verifier = json{{"verified", ok}};
                if (!ok) file.verifier["diagnostic"] = diag;
                file.metadata = metadata(timer);
                emit(sc->flags, certificate_to_json(file));
                return ok ? kExitOk : kExitInput;
            }
            const auto& be = std::get<BestEffort>(outcome);
            CertificateFile file;
            file.kind = "flag";
            file.payload = json{{"budget_exhausted", true}, {"samples", be.samples}};
            file.verifier = json{{"verified", false}, {"diagnostic", "budget exhausted"}};
            file.metadata = metadata(timer);
            emit(sc->flags, certificate_to_json(file));
            return kExitBudget;
        }
        const bool odd = sc == &od;
        SearchOutcome outcome = odd
                                    ? search_odd_transversal(measures, d, sc->k, sc->flags.config())
                                    : search_transversal(measures, d, sc->k, sc->flags.config());
        return write_transversal_outcome(sc->flags, outcome, measures, d, sc->k, odd, timer, sc->svg);
    }

    if (tv_cmd->parsed())
        return run_tverberg_command(tv_flags, tv_instance, tv_svg, TvInstance::Variant::complex, false);
    if (tvc_cmd->parsed())
        return run_tverberg_command(tvc_flags, tvc_instance, tvc_svg, TvInstance::Variant::complex, true);
    if (tvo_cmd->parsed())
        return run_tverberg_command(tvo_flags, tvo_instance, tvo_svg,
                                    TvInstance::Variant::complex_plus_line, false);

    if (ideal_cmd->parsed()) {
        json gens = json::array();
        for (const auto& g : presentation_ideal(coh_k, coh_d)) gens.push_back(poly_to_json(g));
        emit(coh_flags, json{{"k", coh_k}, {"d", coh_d}, {"generators", gens}});
        return kExitOk;
    }
    if (euler_cmd->parsed()) {
        EulerPowerReport rep = euler_power_nonvanishing(coh_n, coh_d, coh_m, coh_p);
        json survivor = json::array();
        for (const auto& [part, c] : rep.survivor.coeffs)
            survivor.push_back(json{{"partition", part.parts}, {"coefficient", c.str()}});
        emit(coh_flags, json{{"n", coh_n},
                             {"d", coh_d},
                             {"m", coh_m},
                             {"p", coh_p},
                             {"nonzero", rep.nonzero},
                             {"class", survivor}});
        return kExitOk;
    }
    if (split_cmd->parsed()) {
        json in;
        if (coh_in == "-") std::cin >> in;
        else in = read_json_file(coh_in);
        Poly p = poly_from_json(in);
        emit(coh_flags, json{{"k", coh_k}, {"pullback", poly_to_json(splitting_pullback(p, coh_k))}});
        return kExitOk;
    }
    if (proj_cmd->parsed()) {
        emit(coh_flags, json{{"n", coh_n},
                             {"d", coh_d},
                             {"m", coh_m},
                             {"nonzero", projectivization_nonvanishing(coh_n, coh_d, coh_m)}});
        return kExitOk;
    }

    if (fh_cmd->parsed()) {
        Group group;
        if (fh_group == "circle") group = Group::circle;
        else if (fh_group == "z2") group = Group::z2;
        else throw input_error("unknown group: " + fh_group);
        std::optional<std::vector<int>> exponents;
        if (!fh_exponents.empty()) exponents = parse_int_list(fh_exponents);
        KeyTermReport rep = key_term_survives(fh_n, fh_d, group, exponents);
        json j{{"group", fh_group},
               {"n", rep.n},
               {"d", rep.d},
               {"key_monomial", rep.key_monomial},
               {"coefficient", rep.coefficient.str()},
               {"survives", rep.survives},
               {"not_in_product_ideal", rep.not_in_ideal},
               {"contradiction_established", rep.contradiction_established},
               {"within_hypothesis", rep.within_hypothesis}};
        if (group == Group::z2) j["exponents"] = rep.exponents;
        if (!rep.within_hypothesis) j["warning"] = "parameters are outside the theorem's hypothesis";
        emit(fh_flags, j);
        return kExitOk;
    }

    if (gadget_cmd->parsed()) {
        GadgetInstance g;
        Rat eps = rat_from_string(gadget_eps);
        if (gadget_construction == "tight-depth")
            g = make_tight_depth_instance(gadget_d, gadget_k, eps, gadget_battery);
        else if (gadget_construction == "too-many-measures")
            g = make_too_many_measures_instance(gadget_d, gadget_k, eps, gadget_battery);
        else
            throw input_error("unknown construction: " + gadget_construction);
        InstanceFile file;
        file.kind = "gadget";
        file.d = g.d;
        file.gadget = g;
        file.provenance = json{{"generator", "gadget"}, {"tool_version", kToolVersion}};
        emit(gadget_flags, instance_to_json(file));
        return kExitOk;
    }

    if (verify_cmd->parsed() || plot_cmd->parsed()) {
        const bool plotting = plot_cmd->parsed();
        const CommonFlags& flags = plotting ? plot_flags : verify_flags;
        const std::string cert_path = plotting ? plot_cert : verify_cert;
        const std::string inst_path = plotting ? plot_instance : verify_instance;
        CertificateFile cert = certificate_from_json(read_json_file(cert_path));
        InstanceFile inst = instance_from_json(read_json_file(inst_path));
        if (cert.payload.contains("budget_exhausted"))
            throw input_error("certificate file holds a best-effort report, nothing to verify");

        std::string diag;
        bool ok = false;
        std::string svg;
        if (cert.kind == "transversal" || cert.kind == "odd-transversal") {
            TransversalCert tc = transversal_cert_from_payload(cert.payload);
            const int d = cert.payload.at("d").get<int>();
            const int k = cert.payload.at("k").get<int>();
            const bool odd = cert.kind == "odd-transversal";
            std::vector<MassCloud> measures = inst.as_measures();
            ok = verify_transversal(tc, measures, d, k, odd, &diag);
            if (plotting && ok) svg = transversal_svg(measures, tc);
        } else if (cert.kind == "flag") {
            FlagCert fc = flag_cert_from_payload(cert.payload);
            const int d = cert.payload.at("d").get<int>();
            const int k = cert.payload.at("k").get<int>();
            ok = verify_flag(fc, inst.as_measures(), d, k, &diag);
            if (plotting) throw input_error("plotting is defined for transversal and tverberg kinds");
        } else if (cert.kind == "tverberg") {
            if (!inst.tverberg) throw input_error("tverberg certificate needs a tverberg instance");
            TverbergCert tc = tverberg_cert_from_payload(cert.payload, *inst.tverberg);
            ok = verify_tv(tc, *inst.tverberg, &diag);
            if (plotting && ok) svg = tverberg_svg(*inst.tverberg, tc);
        } else {
            throw input_error("unknown certificate kind: " + cert.kind);
        }
        if (!ok) {
            std::cerr << "verification failed: " << diag << "\n";
            return kExitInput;
        }
        if (plotting) {
            if (flags.out.empty()) std::cout << svg;
            else write_text_file(flags.out, svg);
        } else {
            std::cout << "verified\n";
        }
        return kExitOk;
    }

    return kExitOk;
}

} // namespace

int main(int argc, char** argv)
{
    try {
        return dispatch(argc, argv);
    } catch (const ctvlab::input_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInput;
    }
}
