#include "support.hpp"

#include <unistd.h>

#include <atomic>
#include <fstream>
#include <regex>
#include <sstream>

#include "axiomkit/wsml/token.hpp"

namespace fs = std::filesystem;

namespace testsupport {

fs::path source_dir() { return AXIOM_SOURCE_DIR; }
fs::path warehouse_dir() { return source_dir() / "warehouse"; }
fs::path data_dir() { return source_dir() / "tests" / "data"; }
fs::path script_path(const std::string& name) { return source_dir() / "scripts" / name; }

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string listing(const std::string& name) { return read_file(data_dir() / "listings" / (name + ".wsml")); }

std::vector<std::string> tokens(const std::string& text) {
    static const std::regex counter("autoGeneratedAxiom_[0-9]+");
    std::vector<std::string> out;
    for (const auto& t : axiomkit::wsml::tokenize(text)) {
        if (t.kind == axiomkit::wsml::TokenKind::End) break;
        std::string lex = std::regex_replace(t.lexeme, counter, "autoGeneratedAxiom_N");
        out.push_back(std::string(axiomkit::wsml::to_string(t.kind)) + ":" + lex);
    }
    return out;
}

std::string token_diff(const std::string& expected, const std::string& actual) {
    auto a = tokens(expected);
    auto b = tokens(actual);
    std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i)
        if (a[i] != b[i]) return "token " + std::to_string(i) + ": expected " + a[i] + ", got " + b[i];
    if (a.size() != b.size())
        return "length: expected " + std::to_string(a.size()) + " tokens, got " + std::to_string(b.size());
    return {};
}

bool differs_only_by_trailing_paren(const std::string& expected, const std::string& actual) {
    auto a = tokens(expected);
    auto b = tokens(actual);
    if (a.size() != b.size() + 1 || a.size() < 2) return false;
    if (a[a.size() - 2] != tokens(")").front()) return false;
    a.erase(a.end() - 2);
    return a == b;
}

Replay::Replay(const fs::path& warehouse_root) : warehouse(axiomkit::OntologyWarehouse::open(warehouse_root)) {
    engine = std::make_unique<axiomkit::Engine>(registry);
    runner = std::make_unique<axiomkit::ScriptRunner>(registry, &warehouse, *engine);
}

void Replay::run(const fs::path& script, std::optional<int> at_step) {
    runner->run(axiomkit::load_script(script.string()), at_step);
}

std::string Replay::text() const { return axiomkit::generate_axiom_text(engine->model(), registry); }

TempDir::TempDir() {
    static std::atomic<int> counter{0};
    path_ = fs::temp_directory_path() /
            ("axiomkit-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    fs::create_directories(path_);
}

TempDir::~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
}

fs::path TempDir::write(const std::string& name, const std::string& text) const {
    fs::path p = path_ / name;
    fs::create_directories(p.parent_path());
    std::ofstream(p, std::ios::binary) << text;
    return p;
}

}  // namespace testsupport
