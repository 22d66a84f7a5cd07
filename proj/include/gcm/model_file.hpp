#pragma once
#include "gcm/families.hpp"

#include <string>
#include <vector>

namespace gcm {

struct StructureBlock {
  std::string kind;  // "symplectic", "complex" or "general"
  std::string name;
  Form omega, B;     // symplectic
  Mat I;             // complex, column k is the image of x_k
  Mat J;             // general, columns are images of x_1..x_n, e^1..e^n
  int line = 0;
};

struct FamilyBlock {
  std::string name;
  FamilySpec spec;
  int line = 0;
};

struct GKBlock {
  std::string name, first, second;
  int line = 0;
};

struct ModelFile {
  int dim = 0;
  std::vector<Form> structure;  // d e^k
  Form H;
  ModelPtr model;
  std::vector<StructureBlock> structures;
  std::vector<FamilyBlock> families;
  std::vector<GKBlock> gks;

  const StructureBlock *find_structure(const std::string &name) const;
  const FamilyBlock *find_family(const std::string &name) const;
};

// Throws SyntaxError, UnknownGenerator or DimensionOdd; messages carry
// "line L, col C".
ModelFile parse_model(const std::string &text);
ModelFile load_model(const std::string &path);
// Canonical text form; parse_model(emit_model(m)) emits identically.
std::string emit_model(const ModelFile &m);

GCSPtr build_structure(const ModelFile &m, const StructureBlock &b);

// "t=1/2,s=0" against the parameter names of a family.
Vec parse_point(const std::string &text, const std::vector<std::string> &vars);

} // namespace gcm
