#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "leekit/obstruct.hpp"
#include "leekit/search.hpp"
#include "leekit/tiling.hpp"
#include "leekit/witness.hpp"

namespace leekit {

using Json = nlohmann::ordered_json;

/// Raised on malformed or schema-violating documents (CLI exit code 2).
class JsonFormatError : public std::runtime_error {
  public:
    explicit JsonFormatError(const std::string& msg) : std::runtime_error(msg) {}
};

Json group_to_json(const AbelianGroup& g);
AbelianGroup group_from_json(const Json& j);

Json witness_to_json(const Witness& w);
Witness witness_from_json(const Json& j);

/// Code document: the lifted homomorphism plus its kernel lattice.
struct CodeDocument {
    int n = 0;
    AbelianGroup group;
    std::vector<GroupElement> images;
    std::optional<CodeLattice> kernel;
};

Json code_to_json(const GroupHomomorphism& phi, const CodeLattice& kernel);
CodeDocument code_from_json(const Json& j);

Json certificate_to_json(const ObstructionCertificate& c);
ObstructionCertificate certificate_from_json(const Json& j);

Json resume_token_to_json(const ResumeToken& t);
ResumeToken resume_token_from_json(const Json& j);

/// Parses a whole file; wraps parse errors into JsonFormatError.
Json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const Json& j);

}  // namespace leekit
