#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace axiomkit {

struct Position {
    std::size_t line = 1;
    std::size_t column = 1;
    std::size_t offset = 0;

    bool operator==(const Position&) const = default;
};

/// Error carrying a stable machine-readable code (e.g. "SlotOccupied").
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message,
          std::optional<Position> position = std::nullopt)
        : std::runtime_error(message), code_(std::move(code)), position_(position) {}

    const std::string& code() const noexcept { return code_; }
    const std::optional<Position>& position() const noexcept { return position_; }

private:
    std::string code_;
    std::optional<Position> position_;
};

namespace errc {
inline constexpr const char* LexError = "LexError";
inline constexpr const char* ParseError = "ParseError";
inline constexpr const char* DirectoryNotFound = "DirectoryNotFound";
inline constexpr const char* IoError = "IoError";
inline constexpr const char* DuplicateIri = "DuplicateIri";
inline constexpr const char* NotInWarehouse = "NotInWarehouse";
inline constexpr const char* CyclicInheritance = "CyclicInheritance";
inline constexpr const char* UnknownElement = "UnknownElement";
inline constexpr const char* UnresolvedStub = "UnresolvedStub";
inline constexpr const char* StubConcept = "StubConcept";
inline constexpr const char* UnknownConcept = "UnknownConcept";
inline constexpr const char* UnknownInstance = "UnknownInstance";
inline constexpr const char* UnknownRelation = "UnknownRelation";
inline constexpr const char* UnknownNode = "UnknownNode";
inline constexpr const char* UnknownConnection = "UnknownConnection";
inline constexpr const char* UnknownSlot = "UnknownSlot";
inline constexpr const char* ModeError = "ModeError";
inline constexpr const char* SlotOccupied = "SlotOccupied";
inline constexpr const char* Incompatible = "Incompatible";
inline constexpr const char* WouldCycle = "WouldCycle";
inline constexpr const char* NotArity = "NotArity";
inline constexpr const char* StubType = "StubType";
inline constexpr const char* AmbiguousDefault = "AmbiguousDefault";
inline constexpr const char* BadLiteral = "BadLiteral";
inline constexpr const char* DuplicateName = "DuplicateName";
inline constexpr const char* BadName = "BadName";
inline constexpr const char* NameConflict = "NameConflict";
inline constexpr const char* CannotDeleteRoot = "CannotDeleteRoot";
inline constexpr const char* NotAllowed = "NotAllowed";
inline constexpr const char* UnknownChain = "UnknownChain";
inline constexpr const char* HasConnections = "HasConnections";
inline constexpr const char* EmptyStack = "EmptyStack";
inline constexpr const char* EmptySections = "EmptySections";
inline constexpr const char* MissingOntology = "MissingOntology";
inline constexpr const char* BadRequest = "BadRequest";
inline constexpr const char* StaleRevision = "StaleRevision";
inline constexpr const char* UnknownSession = "UnknownSession";
}  // namespace errc

}  // namespace axiomkit
