#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "axiomkit/op_engine.hpp"
#include "axiomkit/script.hpp"
#include "axiomkit/wsml_codegen.hpp"

namespace testsupport {

std::filesystem::path source_dir();
std::filesystem::path warehouse_dir();
std::filesystem::path data_dir();
std::string read_file(const std::filesystem::path& path);

/// Listing text from tests/data/listings/<name>.wsml.
std::string listing(const std::string& name);

/// Token stream as "Kind:lexeme" strings with the axiom counter normalized.
std::vector<std::string> tokens(const std::string& text);

/// Describes the first token difference, or returns "" when the streams are equal.
std::string token_diff(const std::string& expected, const std::string& actual);

/// True when `expected` differs from `actual` only by one extra ')' right before the final '.'.
bool differs_only_by_trailing_paren(const std::string& expected, const std::string& actual);

/// A replayed script: registry, engine and labels stay alive together.
struct Replay {
    axiomkit::OntologyRegistry registry;
    axiomkit::OntologyWarehouse warehouse;
    std::unique_ptr<axiomkit::Engine> engine;
    std::unique_ptr<axiomkit::ScriptRunner> runner;

    explicit Replay(const std::filesystem::path& warehouse_root = warehouse_dir());
    void run(const std::filesystem::path& script, std::optional<int> at_step = std::nullopt);
    std::string text() const;
};

std::filesystem::path script_path(const std::string& name);

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
public:
    TempDir();
    ~TempDir();
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }
    /// Writes `text` to `name` inside the directory and returns the full path.
    std::filesystem::path write(const std::string& name, const std::string& text) const;

private:
    std::filesystem::path path_;
};

}  // namespace testsupport
