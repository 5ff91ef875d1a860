#pragma once
#include <cstdint>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

namespace bvq {

enum class ErrorCode { Parse = 1, Invalid = 2, Precondition = 3, Budget = 4, NotFound = 5, Internal = 6 };

struct Error : std::runtime_error {
    ErrorCode code;
    std::size_t pos;
    Error(ErrorCode c, const std::string& msg, std::size_t p = 0) : std::runtime_error(msg), code(c), pos(p) {}
};

struct Name {
    std::string base;
    bool neg = false;
    Name complement() const { return Name{base, !neg}; }
    std::string str() const { return neg ? "~" + base : base; }
    auto operator<=>(const Name&) const = default;
};

enum class Kind : std::uint8_t { One, Atom, Seq, Par, CoPar, Not, Sdq };

struct Node;
using Structure = std::shared_ptr<const Node>;

struct Node {
    Kind kind = Kind::One;
    Name name;  // atom label, or Sdq binder (positive)
    std::vector<Structure> kids;
    int id = -1;  // atom occurrence id, -1 when untracked
};

Structure mk_one();
Structure mk_atom(const Name& n, int id = -1);
Structure mk_atom(const std::string& base, bool neg = false, int id = -1);
// n-ary builders: 0 kids -> One, 1 kid -> that kid
Structure mk_seq(std::vector<Structure> kids);
Structure mk_par(std::vector<Structure> kids);
Structure mk_copar(std::vector<Structure> kids);
Structure mk_op(Kind k, std::vector<Structure> kids);
Structure mk_not(Structure s);
Structure mk_sdq(const std::string& binder, Structure body);

Structure parse_structure(const std::string& text);

struct PrintOpts {
    bool ids = false;
};
std::string print(const Structure& s, PrintOpts o = {});

Structure negate(const Structure& s);
Structure canonicalize(const Structure& s);
bool congruent(const Structure& r, const Structure& t);
bool is_canonical(const Structure& s);

// Nameless canonical key: equal iff congruent.
std::string canon_key(const Structure& s);
// Key that also distinguishes atoms whose id is in `marked`.
std::string canon_key_marked(const Structure& s, const std::unordered_set<int>& marked);
// Key that records occurrence ids (congruence classes with identity).
std::string canon_key_ids(const Structure& s);

std::size_t size(const Structure& s);

struct NameSets {
    std::set<Name> free, bound;
};
NameSets names(const Structure& s);
bool occurs_free(const std::string& base, const Structure& s);
std::set<std::string> free_bases(const Structure& s);

// Capture-avoiding substitution of a free base name by another base.
Structure rename_free(const Structure& s, const std::string& from, const std::string& to);
std::string fresh_base(const std::string& hint, const std::set<std::string>& avoid);
std::set<std::string> all_bases(const Structure& s);

// Assign ids 0.. in pre-order to every atom; returns the renumbered structure.
Structure assign_ids(const Structure& s, int start = 0);
void collect_ids(const Structure& s, std::vector<int>& out);
std::size_t atom_count(const Structure& s);
bool has_kind(const Structure& s, Kind k);
bool is_tensor_free(const Structure& s);
bool structurally_equal(const Structure& a, const Structure& b, bool with_ids = false);

}  // namespace bvq
