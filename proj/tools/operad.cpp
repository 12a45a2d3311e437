// operad: command-line front end
#include "operad/operad.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace operad;
using json = nlohmann::ordered_json;

namespace {

struct Common {
    std::string file;
    int ncolors = 2;
    std::string color_names;
    std::string out;
};

void add_common(CLI::App* sub, Common& c, bool with_file = true, bool with_colors = true) {
    if (with_file) sub->add_option("file", c.file, ".opd file or builtin name (Com, Lie, ...)")->required();
    if (with_colors) {
        sub->add_option("--colors", c.ncolors, "number of colors, named c0..c(N-1)")->check(CLI::Range(1, 6));
        sub->add_option("--color-names", c.color_names, "comma separated color names, in order");
    }
    sub->add_option("-o,--output", c.out, "write the result (.opd gets the DSL, anything else JSON)");
}

std::vector<std::string> colors_of(const Common& c) {
    if (c.color_names.empty()) return default_colors(c.ncolors);
    std::vector<std::string> out;
    std::stringstream ss(c.color_names);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(trim(item));
    return out;
}

struct FileError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Presentation load(const std::string& path) {
    if (std::filesystem::is_regular_file(path)) {
        std::ifstream in(path);
        std::stringstream ss;
        ss << in.rdbuf();
        try {
            return parse(ss.str());
        } catch (const ParseError& e) {
            throw FileError(path + ":" + e.what());
        }
    }
    for (const auto& n : builtin_names())
        if (n == path) return builtin(n);
    throw std::invalid_argument("cannot read '" + path + "' (not a file or builtin)");
}

json dims_json(const std::map<std::pair<int, int>, std::size_t>& d) {
    json j = json::array();
    for (const auto& [k, v] : d) j.push_back({{"arity", k.first}, {"weight", k.second}, {"dim", v}});
    return j;
}

json presentation_payload(const Presentation& p) {
    json j;
    j["dsl"] = render(p);
    j["presentation"] = to_json(p);
    return j;
}

struct Outcome {
    Status status = Status::Info;
    json payload = json::object();
    std::optional<Presentation> pres;
};

int emit(const std::string& echo, const Outcome& o, const std::string& out) {
    json j;
    j["command"] = echo;
    j["status"] = status_string(o.status);
    j["payload"] = o.payload;
    const auto text = j.dump(2) + "\n";
    std::cout << text;
    if (!out.empty()) {
        std::ofstream f(out);
        if (!f) throw std::invalid_argument("cannot write '" + out + "'");
        if (o.pres && std::filesystem::path(out).extension() == ".opd")
            f << render(*o.pres);
        else
            f << text;
    }
    return o.status == Status::Fail ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"compatible structures on quadratic operads"};
    app.require_subcommand(1);

    Common c;
    int arity = 0;
    std::string sigma, drop_rule, order_mode = "search", file_b, id;
    bool black = false, white = false, check_confluence = false, list = false;
    unsigned seed = VerifyInput{}.seed;

    auto* s_parse = app.add_subcommand("parse", "parse and print a presentation");
    add_common(s_parse, c, true, false);
    auto* s_dims = app.add_subcommand("dims", "dimension of an arity component of the quotient");
    add_common(s_dims, c, true, false);
    s_dims->add_option("--arity", arity, "arity (1..5)")->required();
    auto* s_pol = app.add_subcommand("polarize", "quasipolarizations of every relation, by type");
    add_common(s_pol, c);
    auto* s_lin = app.add_subcommand("lin", "linear compatibility Lin P");
    add_common(s_lin, c);
    auto* s_mt = app.add_subcommand("mt", "matching compatibility MT P for a sigma choice");
    add_common(s_mt, c);
    s_mt->add_option("--sigma", sigma, "e.g. \"r1:c(1,1)=(12),e\"");
    auto* s_lmt = app.add_subcommand("lmt", "leveled matching compatibility LMT P");
    add_common(s_lmt, c);
    auto* s_tot = app.add_subcommand("tot", "total compatibility Tot P");
    add_common(s_tot, c);
    auto* s_dual = app.add_subcommand("dual", "Koszul dual");
    add_common(s_dual, c, true, false);
    auto* s_manin = app.add_subcommand("manin", "Manin black or white product");
    add_common(s_manin, c, true, false);
    s_manin->add_option("file_b", file_b, "second operand")->required();
    auto* fb = s_manin->add_flag("--black", black, "black product");
    auto* fw = s_manin->add_flag("--white", white, "white product");
    fb->excludes(fw);
    auto* s_gb = app.add_subcommand("gb", "orient relations and check confluence; with colors, of LMT P");
    add_common(s_gb, c);
    s_gb->add_flag("--check-confluence", check_confluence, "check every critical monomial");
    s_gb->add_option("--drop-rule", drop_rule, "remove the rule with this lead, e.g. \"m(m(1,2),3)\"");
    s_gb->add_option("--order", order_mode, "search (first confluent path order) or default")
        ->check(CLI::IsMember({"search", "default"}));
    auto* s_count = app.add_subcommand("count-matching", "number of matching choices");
    add_common(s_count, c);
    auto* s_verify = app.add_subcommand("verify", "run a verification suite");
    s_verify->add_flag("--list", list, "list suite ids");
    s_verify->add_option("id", id, "suite id");
    s_verify->add_option("file", c.file, ".opd file or builtin name");
    s_verify->add_option("--colors", c.ncolors, "number of colors")->check(CLI::Range(1, 6));
    s_verify->add_option("--color-names", c.color_names, "comma separated color names");
    s_verify->add_option("--sigma", sigma, "sigma choice for mt-dual-search");
    s_verify->add_option("--seed", seed, "seed for sampled checks");
    s_verify->add_option("-o,--output", c.out, "write the JSON report");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    std::string echo;
    for (int i = 1; i < argc; ++i) echo += (i > 1 ? " " : "") + std::string(argv[i]);
    const auto t0 = std::chrono::steady_clock::now();

    try {
        Outcome o;
        const auto colors = colors_of(c);
        if (s_parse->parsed()) {
            o.pres = load(c.file);
            o.payload = presentation_payload(*o.pres);
        } else if (s_dims->parsed()) {
            const auto p = load(c.file);
            const auto d = component_dimension(p, arity);
            o.payload["operad"] = p.name;
            o.payload["arity"] = arity;
            o.payload["dim"] = d.dim;
            json w = json::array();
            for (const auto& [m, v] : d.by_weight) w.push_back({{"weight", m}, {"free", v.first}, {"ideal", v.second}});
            o.payload["by_weight"] = w;
        } else if (s_pol->parsed()) {
            const auto p = load(c.file);
            json arr = json::array();
            for (const auto& r : p.rels)
                for (const auto& t : weak_compositions(static_cast<int>(colors.size()), r.poly.weight())) {
                    const auto q = quasipolarize(r.poly, colors, t);
                    arr.push_back({{"relation", r.name}, {"type", type_string(t)}, {"poly", render(q)}, {"terms", poly_json(q)}});
                }
            o.payload["colors"] = colors;
            o.payload["polarizations"] = arr;
        } else if (s_lin->parsed()) {
            o.pres = linear_compat(load(c.file), colors);
        } else if (s_mt->parsed()) {
            const auto p = load(c.file);
            const auto sc = sigma.empty() ? SigmaChoice{} : parse_sigma(sigma, p, static_cast<int>(colors.size()));
            o.pres = matching_compat(p, colors, sc);
        } else if (s_lmt->parsed()) {
            o.pres = leveled_matching(load(c.file), colors);
        } else if (s_tot->parsed()) {
            o.pres = total_compat(load(c.file), colors);
        } else if (s_dual->parsed()) {
            o.pres = koszul_dual(load(c.file));
        } else if (s_manin->parsed()) {
            if (!black && !white) throw std::invalid_argument("manin: give --black or --white");
            const auto a = load(c.file), b = load(file_b);
            o.pres = black ? black_product(a, b) : white_product(a, b);
        } else if (s_gb->parsed()) {
            auto p = load(c.file);
            const bool colored = s_gb->count("--colors") > 0 || s_gb->count("--color-names") > 0;
            PathLexOrder ord(p.gens);
            json search = json::object();
            if (order_mode == "search") {
                auto s = find_confluent_order(p);
                search["tried"] = s.tried;
                search["found"] = s.found.has_value();
                if (s.found) ord = s.found->order;
            }
            if (colored) {
                p = leveled_matching(p, colors);
                ord = ord.colored(p.gens, colors);
            }
            auto run = run_groebner(p, ord, drop_rule);
            o.payload["operad"] = p.name;
            o.payload["order"] = ord.describe();
            if (order_mode == "search") o.payload["order_search"] = search;
            json rules = json::array();
            for (const auto& r : run.rules) rules.push_back({{"lead", render(r.lead)}, {"rest", render(r.rest)}});
            o.payload["rules"] = rules;
            if (check_confluence) {
                o.status = run.report.confluent ? Status::Pass : Status::Fail;
                o.payload["confluent"] = run.report.confluent;
                o.payload["critical"] = run.report.checks.size();
                o.payload["failures"] = run.report.failures();
                if (!run.error.empty()) o.payload["error"] = run.error;
                o.payload["certificate"] = certificate_json(run.report);
                if (run.report.confluent) o.payload["conclusion"] = "quadratic Groebner basis, hence Koszul";
            }
        } else if (s_count->parsed()) {
            const auto n = count_matching(load(c.file), colors);
            o.payload["count"] = rational_json(n);
        } else if (s_verify->parsed()) {
            if (list) {
                json arr = json::array();
                for (const auto& e : verify_registry()) arr.push_back({{"id", e.id}, {"claim", e.claim}});
                o.payload["suites"] = arr;
            } else {
                if (id.empty()) throw std::invalid_argument("verify: missing suite id (see --list)");
                const auto& e = verify_entry(id);
                VerifyInput in;
                in.colors = colors;
                in.seed = seed;
                if (e.needs_operad) {
                    if (c.file.empty()) throw std::invalid_argument("verify " + id + ": missing operad");
                    in.p = load(c.file);
                    if (!sigma.empty()) in.sigma = parse_sigma(sigma, in.p, static_cast<int>(colors.size()));
                }
                const auto r = run_verify(id, in);
                o.status = r.status;
                o.payload["id"] = id;
                o.payload["message"] = r.report.message;
                o.payload["data"] = r.report.data;
            }
        }
        if (o.pres && o.payload.empty()) o.payload = presentation_payload(*o.pres);
        if (o.pres && s_dims->parsed() == false && !s_parse->parsed()) o.payload["relation_dims"] = dims_json(relation_dims(*o.pres));
        const int code = emit(echo, o, c.out);
        std::cerr << status_string(o.status) << " in "
                  << std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() << " s\n";
        return code;
    } catch (const std::exception& e) {
        // DSL errors arrive as file:line:col: message
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
