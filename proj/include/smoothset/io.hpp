#pragma once

#include <filesystem>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "smoothset/connections.hpp"
#include "smoothset/sheaf.hpp"
#include "smoothset/simplicial.hpp"

namespace smoothset {

/// Reads a whole file; throws ParseError (line 0) when it cannot be opened.
std::string read_file(const std::filesystem::path& path);

// Every format starts with a header line "smoothset <kind> 1". Blank lines and text after
// '#' are ignored. Parse failures throw ParseError with the offending line.

/// Simplicial set files come in three kinds:
///   kind tables    explicit face and degeneracy tables (what serialize writes)
///   kind complex   ordered simplicial complex: "cap N" and one "facet v0 v1 ..." per facet
///   kind nerve     "group cyclic N" or "group klein", plus "cap N"
/// Tables rows read "name : face0 face1 ... | degeneracy0 ...", one dimension block per
/// "dim n" header.
std::string serialize(const SimplicialSet& x);
SimplicialSet parse_simplicial_set(const std::string& text);
SimplicialSet load_simplicial_set(const std::filesystem::path& path);

/// "smoothset map 1", paths relative to the map file, in one of three forms:
///   "source PATH", "target PATH" and "send DIM SOURCE-NAME TARGET-NAME" for every
///   nondegenerate source simplex; "identity PATH"; "product PATH PATH" with "project 1|2".
SimplicialMap load_simplicial_map(const std::filesystem::path& path);

struct NamedPresheaf {
    std::string name;
    Presheaf presheaf;
};

struct SiteFile {
    std::shared_ptr<const FiniteSite> site;
    std::vector<NamedPresheaf> presheaves;
};

/// "smoothset site 1". Base: "base PATH" or inline "cap N" plus "facet" lines.
/// "object NAME GENERATOR...", "cover OBJECT MEMBER...". Presheaves:
///   presheaf NAME constant LABEL...
///   presheaf NAME vertex-functions K
///   presheaf NAME maps-to-simplex M
///   presheaf NAME table      followed by "sections OBJECT LABEL..." and
///                            "restrict FROM TO LABEL=LABEL ..." lines; restrictions to an
///                            object with a single section may be omitted
SiteFile parse_site(const std::string& text, const std::filesystem::path& directory = {});
SiteFile load_site(const std::filesystem::path& path);

/// "smoothset u1bundle 1":
///   triangle A B C ORIENTATION FORM-TERMS
///   transition A B FROM TO WINDING POTENTIAL-TERMS
/// Forms use the "(c; exponents; indices)" term syntax; potentials are 0-forms on an edge.
U1BundleData parse_u1_bundle(const std::string& text);
std::string serialize(const U1BundleData& b);

struct FaceExtendInput {
    int dim = 0;
    int degree = 0;
    std::vector<std::optional<PolyForm>> data;
};

struct HornFillInput {
    int n = 0;
    int k = 0;
    MatrixLieAlgebra algebra;
    std::vector<LieValuedForm> faces;
};

struct ExtraDegeneracyInput {
    MatrixLieAlgebra algebra;
    LieValuedForm form;
    std::vector<std::vector<double>> points;
    int samples = 100;
};

using ExtendInput = std::variant<FaceExtendInput, HornFillInput, ExtraDegeneracyInput>;

/// "smoothset extend 1" with "mode faces|horn|extra-degeneracy":
///   faces:  "dim N", "degree P", "face I TERMS"
///   horn:   "n N", "k K", "algebra u1|sl2|gl N", "face I ROW COL TERMS"
///   extra-degeneracy: "dim N", "algebra ...", "entry ROW COL TERMS", "point T0 T1 ...",
///           "samples S"
ExtendInput parse_extend(const std::string& text);
MatrixLieAlgebra parse_algebra(const std::string& text);
std::string to_text(const LieValuedForm& w);

}  // namespace smoothset
