// axiomctl: validate ontologies, print registry trees, replay op scripts, export capabilities, serve.

#include <csignal>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <pthread.h>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <httplib.h>
#include <json.hpp>

#include "axiomkit/service_api.hpp"
#include "axiomkit/wsml/parser.hpp"

namespace fs = std::filesystem;
using namespace axiomkit;
using nlohmann::json;

namespace {

constexpr int kOk = 0;
constexpr int kDomainError = 1;
constexpr int kUsageError = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::optional<OntologyWarehouse> open_warehouse(const std::string& flag) {
    std::string dir = flag;
    if (dir.empty())
        if (const char* env = std::getenv("AXIOM_WAREHOUSE")) dir = env;
    if (dir.empty()) return std::nullopt;
    return OntologyWarehouse::open(dir);
}

const OntologyWarehouse& need_warehouse(const std::optional<OntologyWarehouse>& w) {
    if (!w) throw UsageError("no warehouse: pass --warehouse or set AXIOM_WAREHOUSE");
    return *w;
}

std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(errc::IoError, "cannot write " + path);
    out << text;
}

std::string describe(const Error& e) {
    std::string s = e.code() + ": " + e.what();
    if (e.position()) s += " (line " + std::to_string(e.position()->line) + ", column " +
                           std::to_string(e.position()->column) + ")";
    return s;
}

wsml::NegationFlavor negation_from(const std::string& text) {
    if (text == "not") return wsml::NegationFlavor::Not;
    if (text == "naf") return wsml::NegationFlavor::Naf;
    if (text == "neg") return wsml::NegationFlavor::Neg;
    throw UsageError("--negation must be not, naf or neg");
}

int cmd_validate(const std::vector<std::string>& files) {
    int rc = kOk;
    for (const auto& f : files) {
        if (!fs::exists(f)) throw UsageError("no such file: " + f);
        std::string text = read_text(f);
        try {
            wsml::OntologyDocAst doc = wsml::parse_document(text);
            if (doc.has_ontology) {
                OntologyRegistry reg;
                reg.load_text(text, f);
            }
            std::cout << f << ": ok\n";
        } catch (const Error& e) {
            std::cerr << f << ": " << describe(e) << "\n";
            rc = kDomainError;
        }
    }
    return rc;
}

int cmd_tree(const std::optional<OntologyWarehouse>& warehouse, const std::vector<std::string>& iris) {
    OntologyRegistry reg;
    for (const auto& iri : iris) {
        if (fs::exists(iri)) reg.load_file(iri);
        else reg.load_by_iri(need_warehouse(warehouse), iri);
    }
    std::cout << render_tree(reg.tree());
    return kOk;
}

struct ReplayOptions {
    std::string script;
    std::string output;
    std::optional<int> at_step;
    std::string negation = "not";
    std::string save_model;
    std::uint64_t axiom_number = 1;
};

AxiomModel replay_model(OntologyRegistry& reg, const std::optional<OntologyWarehouse>& warehouse,
                        const std::string& script, std::optional<int> at_step, std::uint64_t number) {
    if (!fs::exists(script)) throw UsageError("no such script: " + script);
    auto records = load_script(script);
    Engine engine(reg, AxiomModel(auto_axiom_name(number)));
    ScriptRunner runner(reg, warehouse ? &*warehouse : nullptr, engine);
    runner.run(records, at_step);
    return engine.model();
}

int cmd_replay(const std::optional<OntologyWarehouse>& warehouse, const ReplayOptions& o) {
    RenderOptions render{negation_from(o.negation)};
    OntologyRegistry reg;
    AxiomModel m = replay_model(reg, warehouse, o.script, o.at_step, o.axiom_number);
    if (!o.save_model.empty()) write_output(o.save_model, persist_model(m, reg).dump(2) + "\n");
    write_output(o.output, generate_axiom_text(m, reg, render));
    return kOk;
}

// Section spec file: {"sections": [{"kind", "description"?, "shared_variables"?, "script" | "body"}]}
int cmd_export(const std::optional<OntologyWarehouse>& warehouse, const std::string& spec_path,
               const std::string& output) {
    json spec;
    try {
        spec = json::parse(read_text(spec_path));
    } catch (const json::exception& e) {
        throw UsageError(spec_path + ": " + e.what());
    }
    const json sections = spec.is_object() ? spec.value("sections", json::array()) : json::array();
    if (!sections.is_array() || sections.empty()) throw UsageError("no capability sections given");
    std::vector<CapabilitySection> out;
    fs::path base = fs::path(spec_path).parent_path();
    for (const auto& js : sections) {
        CapabilitySection s{js.at("kind").get<std::string>(), js.value("description", std::string()),
                            js.value("shared_variables", std::vector<std::string>{}), wsml::Expr{}};
        if (js.contains("body")) {
            s.body = wsml::parse_logical_expression(js.at("body").get<std::string>());
        } else if (js.contains("script")) {
            fs::path p = js.at("script").get<std::string>();
            if (p.is_relative()) p = base / p;
            OntologyRegistry reg;
            AxiomModel m = replay_model(reg, warehouse, p.string(), std::nullopt, 1);
            auto e = build_expression(m, reg);
            if (!e) throw Error(errc::EmptySections, "script " + p.string() + " yields an empty body");
            s.body = std::move(*e);
        } else {
            throw UsageError("section needs 'body' or 'script'");
        }
        out.push_back(std::move(s));
    }
    write_output(output, emit_capability(out));
    return kOk;
}

int cmd_serve(const std::optional<OntologyWarehouse>& warehouse, const std::string& listen) {
    std::string host = "127.0.0.1";
    std::string port_text = listen;
    if (auto colon = listen.rfind(':'); colon != std::string::npos) {
        host = listen.substr(0, colon);
        port_text = listen.substr(colon + 1);
    }
    int port = 0;
    try {
        port = std::stoi(port_text);
    } catch (const std::exception&) {
        throw UsageError("--listen expects host:port");
    }

    // SIGTERM/SIGINT are handled by a waiter thread so the server can stop cleanly
    sigset_t signals;
    sigemptyset(&signals);
    sigaddset(&signals, SIGTERM);
    sigaddset(&signals, SIGINT);
    pthread_sigmask(SIG_BLOCK, &signals, nullptr);

    Service service(warehouse);
    httplib::Server server;
    service.mount(server);
    if (!server.bind_to_port(host, port)) {
        std::cerr << "cannot listen on " << host << ":" << port << "\n";
        return kDomainError;
    }
    std::thread waiter([&] {
        int sig = 0;
        sigwait(&signals, &sig);
        server.stop();
    });
    std::cerr << "listening on " << host << ":" << port << "\n";
    server.listen_after_bind();
    if (waiter.joinable()) {
        // the server may have stopped on its own; wake the waiter
        pthread_kill(waiter.native_handle(), SIGTERM);
        waiter.join();
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Ontology-guided WSML axiom construction"};
    app.require_subcommand(1);
    std::string warehouse_dir;
    app.add_option("--warehouse", warehouse_dir, "Ontology warehouse directory (default: $AXIOM_WAREHOUSE)");

    auto* validate = app.add_subcommand("validate", "Parse WSML files and report diagnostics");
    std::vector<std::string> files;
    validate->add_option("files", files, "WSML files")->required();

    auto* tree = app.add_subcommand("tree", "Print the registry forest for the given ontologies");
    std::vector<std::string> iris;
    tree->add_option("iris", iris, "Ontology IRIs or file paths");

    auto* replay = app.add_subcommand("replay", "Replay an operation script into axiom text");
    ReplayOptions ro;
    replay->add_option("script", ro.script, "Script (JSON array of {op, args})")->required();
    replay->add_option("-o,--output", ro.output, "Output file (default stdout)");
    replay->add_option("--at-step", ro.at_step, "Stop after the given step number");
    replay->add_option("--negation", ro.negation, "Negation keyword: not, naf or neg");
    replay->add_option("--save-model", ro.save_model, "Also write the persisted model JSON");
    replay->add_option("--axiom-number", ro.axiom_number, "N in autoGeneratedAxiom_N");

    auto* serve = app.add_subcommand("serve", "Run the HTTP service");
    std::string listen = "127.0.0.1:8080";
    serve->add_option("--listen", listen, "host:port");

    auto* exportc = app.add_subcommand("export-capability", "Emit a capability from section specs");
    std::string spec_path, export_out;
    exportc->add_option("spec", spec_path, "Section spec JSON")->required();
    exportc->add_option("-o,--output", export_out, "Output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kOk : kUsageError;
    }

    try {
        auto warehouse = open_warehouse(warehouse_dir);
        if (*validate) return cmd_validate(files);
        if (*tree) return cmd_tree(warehouse, iris);
        if (*replay) return cmd_replay(warehouse, ro);
        if (*exportc) return cmd_export(warehouse, spec_path, export_out);
        if (*serve) return cmd_serve(warehouse, listen);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kUsageError;
    } catch (const Error& e) {
        if (e.code() == errc::EmptySections) {
            std::cerr << "usage error: " << describe(e) << "\n";
            return kUsageError;
        }
        std::cerr << "error: " << describe(e) << "\n";
        return kDomainError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kDomainError;
    }
    return kUsageError;
}
