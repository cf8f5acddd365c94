#pragma once

// JSON readers and writers for the object kinds the command-line tools
// exchange: chain complexes, dg-coalgebras, dg-comodules, and maps of
// comodules or coalgebras.
//
// File format (JSON, // and /* */ comments allowed when reading):
//
//   {
//     "kind":  "complex" | "coalgebra" | "comodule"
//              | "comodule-map" | "coalgebra-map",
//     "name":  optional string,
//     "field": 0 for the rationals, else a prime p for GF(p),
//     ...kind-specific keys...
//   }
//
// complex:    "dims": [d_0, ..., d_maxdeg];
//             "diff": {"n": matrix d_n, X_n -> X_{n-1}} for n >= 1.
// coalgebra:  complex keys plus
//             "comult": {"n": matrix C_n -> (C (x) C)_n in the binary
//                        tensor layout: blocks (a, n-a) with a ascending,
//                        entry index i*dim_{n-a} + j inside a block};
//             "counit": flat array, the map C_0 -> k.
//             The coaugmentation is re-derived canonically on load.
// comodule:   "coalgebra": reference (see below); carrier "dims"/"diff";
//             "coaction": {"n": matrix X_n -> (X (x) C)_n, degree capped
//                          at the carrier's top degree};
//             optional "left_coaction": {"n": X_n -> (C (x) X)_n}.
// comodule-map / coalgebra-map:
//             "source", "target": reference or inline object of the
//             operand kind; "f": {"n": matrix source_n -> target_n}.
//
// References are strings resolved in order: a builtin coalgebra name
// ("f1".. "f4"), a path relative to the referencing file's directory, a
// path under $COTENSOR_FIXTURES, the string as a path verbatim.
//
// Matrices are row-major arrays of rows. Over GF(p), entries are integers
// (reduced mod p on load); over the rationals, entries are integers or
// canonical "a/b" strings. A zero matrix may be omitted, and an object
// whose matrices are all zero may drop the key entirely; writers always
// omit them. "truncated": true marks a degree-capped carrier.
//
// Writers emit a canonical form: two-space indent, keys sorted, zero
// blocks omitted, trailing newline. parse -> serialize reproduces a
// canonical file byte for byte.

#include <optional>
#include <string>

#include "cotensor/coalgebra.hpp"
#include "cotensor/comodule.hpp"

namespace cotensor {

enum class InputKind {
  complex,
  coalgebra,
  comodule,
  comodule_map,
  coalgebra_map,
};

std::string to_string(InputKind k);

// One parsed file: `kind` tells which payload is engaged. The *_ref
// fields preserve how the file referred to its dependencies (empty when
// they were inline), so serialize_input can reproduce the file.
struct ParsedInput {
  InputKind kind = InputKind::complex;
  std::string name;
  std::string coalgebra_ref;
  std::string source_ref, target_ref;
  std::optional<ChainComplex> complex;
  std::optional<DGCoalgebra> coalgebra;
  std::optional<DGComodule> comodule;
  std::optional<ComoduleMap> comodule_map;
  std::optional<CoalgebraMap> coalgebra_map;
};

// Reads and parses one file. Shape errors (bad kinds, malformed JSON,
// matrices of the wrong size, unresolvable references) throw parse_error
// with the offending path, key, and degree; axiom checks (d*d = 0,
// coassociativity, ...) are left to the validate_* functions so callers
// can report them structurally.
ParsedInput parse_input(const std::string& path);

// Same, from in-memory text; `base_dir` anchors relative references and
// `origin` names the source in diagnostics.
ParsedInput parse_input_text(const std::string& text,
                             const std::string& base_dir = "",
                             const std::string& origin = "<input>");

std::string serialize_complex(const ChainComplex& x,
                              const std::string& name = "");
std::string serialize_coalgebra(const DGCoalgebra& c,
                                const std::string& name = "");
// `coalgebra_ref` empty inlines the coalgebra into the file.
std::string serialize_comodule(const DGComodule& m,
                               const std::string& coalgebra_ref = "",
                               const std::string& name = "");
std::string serialize_comodule_map(const ComoduleMap& m,
                                   const std::string& source_ref = "",
                                   const std::string& target_ref = "",
                                   const std::string& name = "");
std::string serialize_coalgebra_map(const CoalgebraMap& m,
                                    const std::string& source_ref = "",
                                    const std::string& target_ref = "",
                                    const std::string& name = "");
// Re-serializes a parsed file using its recorded name and references.
std::string serialize_input(const ParsedInput& in);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace cotensor
