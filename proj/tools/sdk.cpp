#include "sdk/descent.hpp"
#include "sdk/errors.hpp"
#include "sdk/json_io.hpp"

#include "CLI11.hpp"

#include <iostream>

using namespace sdk;

namespace {

void emit(const json& j, const std::string& path)
{
    if (path.empty() || path == "-")
        std::cout << j.dump(2) << "\n";
    else
        write_json_file(path, j);
}

void print_warnings(const DatumSpec& spec)
{
    for (size_t i = 0; i < spec.factors.size(); ++i)
        for (const auto& w : spec.factors[i].warnings)
            std::cerr << "warning: factor " << i + 1 << ": " << w << "\n";
}

int classify(const std::string& input)
{
    DatumSpec spec = load_spec(input);
    print_warnings(spec);
    json factors = json::array();
    for (const FactorSpec& f : spec.factors)
        factors.push_back(to_json(classify_factor(f)));
    std::string why;
    bool center = center_is_cm_split(spec, &why);
    bool adh = is_strongly_ADH(spec);
    json out = {{"name", spec.name}, {"factors", factors}, {"center_ok", center}, {"strongly_ADH", adh}};
    if (!center)
        out["center_reason"] = why;
    std::cout << out.dump(2) << "\n";
    return adh ? 0 : 1;
}

int involution(const std::string& input, const std::string& out, int precision)
{
    DatumSpec spec = load_spec(input);
    print_warnings(spec);
    json bundles = json::array();
    bool ok = true;
    for (const FactorSpec& f : spec.factors) {
        FactorClass c = classify_factor(f);
        if (!c.admissible) {
            bundles.push_back(to_json(c));
            ok = false;
            continue;
        }
        bundles.push_back(bundle_to_json(bundle_of(f), precision));
    }
    emit({{"name", spec.name}, {"bundles", bundles}}, out);
    return ok ? 0 : 1;
}

int verify(const std::string& input, const std::string& report, std::uint64_t seed, int precision, int samples)
{
    DatumSpec spec = load_spec(input);
    print_warnings(spec);
    DescentReport r = run_descent(spec, seed, samples);
    bool bundles_ok = true;
    for (const BundleReport& b : r.bundles)
        bundles_ok = bundles_ok && b.all_ok();
    json j = to_json(r);
    j["name"] = spec.name;
    j["precision_bits"] = precision;
    json places = json::array();
    for (const FactorSpec& f : spec.factors) {
        if (!classify_factor(f).admissible)
            continue;
        InvolutionBundle b = bundle_of(f);
        places.push_back(bundle_to_json(b, precision)["places"]);
    }
    j["models"] = places;
    emit(j, report);

    auto line = [](const char* what, bool v) { std::cout << (v ? "ok    " : "FAIL  ") << what << "\n"; };
    line("strongly of type (AD^H)", r.strongly_ADH);
    line("bundles verified", bundles_ok && !r.bundles.empty());
    line("extension", r.extension_ok);
    line("conjugate points", r.conjugate_point_ok);
    line("cocycle", r.cocycle_ok);
    line("negative control rejected", r.negative_control_rejected);
    for (const auto& d : r.diagnostics)
        std::cout << "  " << d << "\n";
    return r.all_ok() && bundles_ok ? 0 : 1;
}

int hecke(const std::string& input, const std::string& qfile)
{
    DatumSpec spec = load_spec(input);
    print_warnings(spec);
    std::vector<InvolutionBundle> bundles;
    for (const FactorSpec& f : spec.factors)
        bundles.push_back(bundle_of(f));
    auto entries = hecke_from_json(read_json_file(qfile), bundles);
    json out = json::array();
    bool all = true;
    for (const auto& e : entries) {
        out.push_back({{"q", json::parse(e.q)},
                       {"theta_q", e.theta_q},
                       {"descends_if_equal", e.descends_if_equal},
                       {"note", "theta(q) = q is sufficient, not necessary"}});
        all = all && e.descends_if_equal;
    }
    std::cout << out.dump(2) << "\n";
    return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"explicit involutions and descent checks for unitary and SO* models"};
    app.require_subcommand(1);

    std::string input, out, report, qfile;
    std::uint64_t seed = 20240611;
    int precision = kDefaultPrecisionBits;
    int samples = 50;

    auto* c = app.add_subcommand("classify", "classify the simple factors of a datum");
    c->add_option("--input", input, "datum spec (JSON)")->required()->check(CLI::ExistingFile);

    auto* inv = app.add_subcommand("involution", "build theta for every admissible factor");
    inv->add_option("--input", input, "datum spec (JSON)")->required()->check(CLI::ExistingFile);
    inv->add_option("--out", out, "output file, '-' for stdout")->default_val("-");
    inv->add_option("--precision", precision, "bits for the real embeddings")->check(CLI::Range(16, 4096));

    auto* v = app.add_subcommand("verify", "run every check and write a report");
    v->add_option("--input", input, "datum spec (JSON)")->required()->check(CLI::ExistingFile);
    v->add_option("--seed", seed, "sampling seed");
    v->add_option("--precision", precision, "bits for the real embeddings")->check(CLI::Range(16, 4096));
    v->add_option("--samples", samples, "random samples per numeric check")->check(CLI::Range(1, 10000));
    v->add_option("--report", report, "report file, '-' for stdout")->required();

    auto* h = app.add_subcommand("hecke", "evaluate theta(q) = q");
    h->add_option("--input", input, "datum spec (JSON)")->required()->check(CLI::ExistingFile);
    h->add_option("--q", qfile, "q matrices (JSON)")->required()->check(CLI::ExistingFile);

    CLI11_PARSE(app, argc, argv);

    try {
        if (c->parsed())
            return classify(input);
        if (inv->parsed())
            return involution(input, out, precision);
        if (v->parsed())
            return verify(input, report, seed, precision, samples);
        return hecke(input, qfile);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
