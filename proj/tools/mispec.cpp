#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mispec/classify.hpp"
#include "mispec/instances.hpp"
#include "mispec/reticulation.hpp"
#include "mispec/serialize.hpp"
#include "mispec/spectra.hpp"
#include "mispec/transfer.hpp"

using namespace mispec;

namespace {

constexpr int kOk = 0;
constexpr int kDomainFailure = 1;
constexpr int kUsage = 2;

struct Options {
    std::string instance;
    std::string file;
    bool bundled = false;
    std::string format = "table";
    std::string theorems = "all";
    std::string output;
    bool reports = false;
};

int exit_code_for(ErrorKind k) {
    switch (k) {
    case ErrorKind::ParseError:
    case ErrorKind::SchemaError:
    case ErrorKind::UnknownLabel:
    case ErrorKind::UnknownTheorem: return kUsage;
    default: return kDomainFailure;
    }
}

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<MiStructure> inputs(const Options& o) {
    const int given = !o.instance.empty() + !o.file.empty() + o.bundled;
    if (given != 1) throw UsageError("exactly one of --instance, --file, --bundled is required");
    if (o.bundled) return bundled_instances();
    if (!o.file.empty()) return {load(o.file)};
    return {parse_instance(o.instance)};
}

MiStructure single_input(const Options& o) {
    if (o.bundled) throw UsageError("this verb takes a single instance");
    return inputs(o).front();
}

std::vector<std::string> theorem_filter(const std::string& spec) {
    if (spec == "all" || spec.empty()) return {};
    std::vector<std::string> ids;
    std::stringstream ss(spec);
    for (std::string id; std::getline(ss, id, ',');)
        if (!id.empty()) ids.push_back(id);
    for (const auto& id : ids) find_theorem(id);
    return ids;
}

void require_format(const Options& o, std::initializer_list<const char*> allowed) {
    for (const char* f : allowed)
        if (o.format == f) return;
    throw UsageError("format '" + o.format + "' is not available for this verb");
}

json with_schema(json j) {
    j["schema"] = kSchema;
    return j;
}

std::string set_text(const MiStructure& S, ElemSet s) {
    std::string r = "{";
    bool first = true;
    for_each_bit(s, [&](int x) {
        r += (first ? "" : ", ") + S.label(x);
        first = false;
    });
    return r + "}";
}

void print_violations(const Error& e) {
    for (const auto& v : e.violations()) {
        std::cerr << "  " << to_string(v.kind) << " (";
        for (std::size_t i = 0; i < v.labels.size(); ++i) std::cerr << (i ? "," : "") << v.labels[i];
        std::cerr << ")";
        if (v.count > 1) std::cerr << " and " << v.count - 1 << " more";
        if (!v.message.empty()) std::cerr << ": " << v.message;
        std::cerr << "\n";
    }
}

// ---- verbs ----

int cmd_validate(const Options& o) {
    require_format(o, {"table", "json"});
    json all = json::array();
    for (const auto& S : inputs(o)) {
        if (o.format == "json") {
            all.push_back({{"instance", S.name()},
                           {"valid", true},
                           {"size", S.size()},
                           {"star", satisfies_star(S)},
                           {"associative", is_associative(S)},
                           {"semiprime", is_semiprime(S)}});
        } else {
            std::cout << S.name() << ": valid, " << S.size() << " elements, star " << (satisfies_star(S) ? "yes" : "no")
                      << ", semiprime " << (is_semiprime(S) ? "yes" : "no") << "\n";
        }
    }
    if (o.format == "json") std::cout << with_schema({{"results", all}}).dump(2) << "\n";
    return kOk;
}

int cmd_spectrum(const Options& o) {
    require_format(o, {"table", "json", "dot"});
    const MiStructure S = single_input(o);
    if (o.format == "dot") {
        std::cout << export_hasse(S.lat(), S.name());
        return kOk;
    }
    const auto labels = S.lat().names();
    if (o.format == "json") {
        json j{{"instance", S.name()},
               {"primes", labels_json(S, S.primes())},
               {"maximals", labels_json(S, S.maximals())},
               {"minimal_primes", labels_json(S, S.minimal_primes())},
               {"rho_bot", S.label(rho0(S))},
               {"center", labels_json(S, center_set(S))},
               {"zariski", topology_json(zariski(S), labels)},
               {"flat", topology_json(flat(S), labels)},
               {"patch", topology_json(patch(S), labels)}};
        std::cout << with_schema(j).dump(2) << "\n";
        return kOk;
    }
    std::cout << "instance  " << S.name() << "\n"
              << "Spec      " << set_text(S, S.primes()) << "\n"
              << "Max       " << set_text(S, S.maximals()) << "\n"
              << "Min       " << set_text(S, S.minimal_primes()) << "\n"
              << "rho(bot)  " << S.label(rho0(S)) << "\n"
              << "center    " << set_text(S, center_set(S)) << "\n";
    auto opens = [&](const FiniteTopology& T) { return topology_json(T, labels)["opens"].dump(); };
    std::cout << "zariski   " << opens(zariski(S)) << "\n"
              << "flat      " << opens(flat(S)) << "\n"
              << "patch     " << opens(patch(S)) << "\n";
    return kOk;
}

int cmd_reticulate(const Options& o) {
    require_format(o, {"table", "json", "dot"});
    const MiStructure S = single_input(o);
    const Reticulation R = reticulate(S);
    if (o.format == "dot") {
        std::cout << export_hasse(R.lat, "L(" + S.name() + ")");
        return kOk;
    }
    if (o.format == "json") {
        json classes = json::object();
        for (int i = 0; i < R.lat.size(); ++i) classes[R.lat.name(i)] = labels_json(S, R.classes[i]);
        json covers = json::array();
        for (auto [a, b] : cover_pairs(R.lat)) covers.push_back({R.lat.name(a), R.lat.name(b)});
        json j{{"instance", S.name()},
               {"elements", R.lat.names()},
               {"covers", covers},
               {"classes", classes},
               {"distributive", is_distributive(R.lat)},
               {"boolean", is_boolean_lattice(R.lat)}};
        std::cout << with_schema(j).dump(2) << "\n";
        return kOk;
    }
    std::cout << "L(" << S.name() << "): " << R.lat.size() << " elements"
              << (is_boolean_lattice(R.lat) ? ", Boolean" : "") << "\n";
    for (int i = 0; i < R.lat.size(); ++i) std::cout << "  " << R.lat.name(i) << "  <-  " << set_text(S, R.classes[i]) << "\n";
    return kOk;
}

std::string bits(const TheoremRow& r) {
    std::string s;
    for (const auto& c : r.conditions) s += c.finitely_trivial ? 't' : c.value ? '1' : '0';
    return s;
}

void print_rows_table(const ClassReport& rep) {
    std::size_t w = 8;
    for (const auto& r : rep.theorems) w = std::max(w, r.id.size());
    for (const auto& r : rep.theorems) {
        std::cout << "  " << r.id << std::string(w - r.id.size() + 2, ' ');
        if (r.skipped) {
            std::cout << "skip     " << r.skip_reason << "\n";
            continue;
        }
        std::cout << (r.agreement ? "agree    " : "FAIL     ") << bits(r);
        if (!r.agreement) std::cout << "  broken: " << r.failed;
        std::cout << "\n";
        if (!r.agreement)
            for (const auto& c : r.conditions) std::cout << "      " << (c.value ? "true " : "false") << "  " << c.label << "\n";
    }
}

json structural_reports(const MiStructure& S, bool& ok) {
    const Reticulation R = reticulate(S);
    std::vector<Report> reps{check_spec_homeomorphism(R), check_frame_iso(R), transfer_checks(R),
                             flat_quotient_check(S)};
    if (satisfies_star(S)) reps.push_back(check_boolean_iso(R));
    if (is_semiprime(S)) reps.push_back(pierce_transfer_check(R));
    json out = json::array();
    for (const auto& r : reps) {
        ok = ok && r.ok();
        out.push_back(report_json(r));
    }
    return out;
}

int cmd_classify_or_verify(const Options& o, bool verify) {
    require_format(o, {"table", "json"});
    const auto ids = theorem_filter(o.theorems);
    const auto xs = inputs(o);
    const auto reps = classify_many(xs, verify ? ids : std::vector<std::string>{});
    bool ok = true;
    json all = json::array();
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const ClassReport& rep = reps[i];
        ok = ok && rep.agreement();
        json j = class_report_json(rep);
        if (verify && o.reports) j["reports"] = structural_reports(xs[i], ok);
        all.push_back(j);
        if (o.format != "table") continue;
        std::cout << rep.instance << "\n";
        if (!verify) {
            std::cout << "  classes:";
            for (const auto& [k, v] : rep.verdicts) std::cout << " " << k << "=" << (v ? "yes" : "no");
            std::cout << "\n";
        }
        print_rows_table(rep);
        if (verify && o.reports)
            for (const auto& r : j["reports"])
                for (const auto& c : r["checks"])
                    std::cout << "  " << c["status"].get<std::string>() << "  " << r["subject"].get<std::string>()
                              << ": " << c["id"].get<std::string>() << "\n";
    }
    if (o.format == "json") std::cout << with_schema({{"results", all}, {"agreement", ok}}).dump(2) << "\n";
    if (!ok) std::cerr << "counterexample found\n";
    return ok ? kOk : kDomainFailure;
}

int cmd_export(const Options& o) {
    require_format(o, {"json", "dot"});
    const MiStructure S = single_input(o);
    const std::string text =
        o.format == "dot" ? export_hasse(S.lat(), S.name()) : with_schema(to_json(S)).dump(2) + "\n";
    if (o.output.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(o.output);
        if (!out) throw UsageError("cannot write '" + o.output + "'");
        out << text;
    }
    return kOk;
}

int cmd_generate(const Options& o) {
    if (o.instance.empty() && o.file.empty() && !o.bundled) {
        for (const auto& n : bundled_instance_names()) std::cout << n << "\n";
        return kOk;
    }
    Options e = o;
    if (e.format == "table") e.format = "json";
    return cmd_export(e);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Finite commutator lattices: spectra, reticulation and class verification"};
    app.require_subcommand(1);
    Options o;
    auto add_common = [&](CLI::App* sub, bool multi) {
        sub->add_option("--instance,-i", o.instance, "builtin instance, e.g. zn:12 or product:zn:4,chain:3");
        sub->add_option("--file,-f", o.file, "instance JSON file");
        if (multi) sub->add_flag("--bundled", o.bundled, "run on every bundled instance");
        sub->add_option("--format", o.format, "json, table or dot");
    };
    auto* validate = app.add_subcommand("validate", "check the axioms of an instance");
    add_common(validate, true);
    auto* spectrum = app.add_subcommand("spectrum", "primes, maximals, minimal primes and topologies");
    add_common(spectrum, false);
    auto* reticulate_cmd = app.add_subcommand("reticulate", "the reticulation lattice");
    add_common(reticulate_cmd, false);
    auto* classify_cmd = app.add_subcommand("classify", "class verdicts and the theorem catalog");
    add_common(classify_cmd, true);
    auto* verify = app.add_subcommand("verify", "run catalog theorems and report agreement");
    add_common(verify, true);
    verify->add_option("--theorems", o.theorems, "'all' or comma-separated theorem ids");
    verify->add_flag("--reports", o.reports, "also run the structural and transfer reports");
    auto* export_cmd = app.add_subcommand("export", "canonical JSON or Hasse DOT of an instance");
    add_common(export_cmd, false);
    export_cmd->add_option("--output,-o", o.output, "write to a file instead of stdout");
    auto* generate = app.add_subcommand("generate", "list bundled instances, or emit one as JSON");
    add_common(generate, false);
    generate->add_option("--output,-o", o.output, "write to a file instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }
    if (o.format != "json" && o.format != "table" && o.format != "dot") {
        std::cerr << "unknown format '" << o.format << "'\n";
        return kUsage;
    }
    if (export_cmd->parsed() && o.format == "table") o.format = "json";

    try {
        if (validate->parsed()) return cmd_validate(o);
        if (spectrum->parsed()) return cmd_spectrum(o);
        if (reticulate_cmd->parsed()) return cmd_reticulate(o);
        if (classify_cmd->parsed()) return cmd_classify_or_verify(o, false);
        if (verify->parsed()) return cmd_classify_or_verify(o, true);
        if (export_cmd->parsed()) return cmd_export(o);
        if (generate->parsed()) return cmd_generate(o);
    } catch (const UsageError& e) {
        std::cerr << "usage: " << e.what() << "\n";
        return kUsage;
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        print_violations(e);
        return exit_code_for(e.kind());
    }
    return kUsage;
}
