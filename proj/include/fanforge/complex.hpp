#pragma once

#include <map>
#include <string>
#include <vector>

#include "fanforge/cone.hpp"

namespace fanforge {

// Inclusion of the face `sub` into a cone; map sends the sub cone's ambient
// coordinates to the super cone's ambient coordinates.
struct FaceLink {
  int sub = -1;
  IntMatrix map;
  std::vector<int> vertex_map;  // sub vertex index -> super vertex index, -1 if none
};

struct ComplexCone {
  Cone cone;
  int frame = -1;  // cone of the original input whose coordinates are used
  std::vector<FaceLink> faces;  // proper faces, sorted by sub id
};

struct Violation {
  std::string clause;
  std::vector<int> cone_ids;
  std::string detail;
};

class ConicalComplex {
 public:
  ConicalComplex() = default;
  // Takes cones with (possibly partial) face links; closes the face relation
  // transitively and resolves vertex maps. A frame of -1 means "itself".
  explicit ConicalComplex(std::vector<ComplexCone> cones);

  int size() const { return static_cast<int>(cones_.size()); }
  const Cone& cone(int id) const { return at(id).cone; }
  int frame(int id) const { return at(id).frame; }
  int dim(int id) const { return static_cast<int>(cone(id).dim()); }
  const std::vector<FaceLink>& faces(int id) const { return at(id).faces; }
  const std::vector<int>& supers(int id) const;
  const std::vector<ComplexCone>& cones() const { return cones_; }

  const FaceLink* link(int sub, int super) const;
  bool is_face(int sub, int super) const { return sub == super || link(sub, super) != nullptr; }
  IntMatrix face_map(int sub, int super) const;
  // vertex indices of `super` hit by the face `sub`
  std::vector<int> face_vertex_ids(int sub, int super) const;
  // the face of `super` whose image has exactly these vertex ids; -1 if none
  int face_with_vertices(int super, const std::vector<int>& vertex_ids) const;

  std::vector<int> maximal_cones() const;
  std::vector<int> rays() const;
  // ray id of every vertex of the cone, in vertex order (-1 when unresolved)
  const std::vector<int>& vertex_rays(int id) const;
  int max_dim() const;

 private:
  const ComplexCone& at(int id) const;
  void finalize();

  std::vector<ComplexCone> cones_;
  std::vector<std::vector<int>> supers_;
  std::vector<std::vector<int>> vertex_rays_;
};

std::vector<Violation> validate(const ConicalComplex& k);

std::vector<int> star(const ConicalComplex& k, int tau);
std::vector<int> closed_star(const ConicalComplex& k, int tau);
std::vector<int> link(const ConicalComplex& k, int tau);

bool is_subcomplex(const ConicalComplex& k, const std::vector<int>& ids);
// extracted complex and the id it gives to each original id (-1 if dropped)
ConicalComplex subcomplex(const ConicalComplex& k, const std::vector<int>& ids, std::vector<int>* old_to_new = nullptr);

struct SingSet {
  std::vector<int> sing_faces;
  std::vector<int> sing_subcomplex;
  std::vector<int> reg_subcomplex;
};
SingSet sing_set(const ConicalComplex& k);

// Fan adapter: all faces of the given cones, sharing one ambient space.
// Equal faces are identified; face maps are identities.
ConicalComplex fan_from_cones(const std::vector<Cone>& cones);

struct StarCenter {
  int carrier = -1;
  IntVector vector;  // ambient coordinates of the carrier
};

struct Subdivision {
  ConicalComplex complex;
  std::vector<int> old_to_new;  // -1 for cones of the removed stars
  std::vector<int> new_rays;    // ray id of each center, in the given order
};

Subdivision star_subdivide(const ConicalComplex& k, const std::vector<StarCenter>& centers);

// the cone holding x (ambient coordinates of the frame) in its relative interior,
// among cones with the given frame; -1 if none
int locate(const ConicalComplex& k, int frame, const IntVector& x);

// ---- maps between complexes

enum class MapKind { local_isomorphism, regular_local_projection, general, invalid };
const char* map_kind_name(MapKind kind);

struct ComplexMap {
  std::vector<int> image;        // source cone id -> target cone id
  std::vector<IntMatrix> linear; // per source cone, target ambient x source ambient
};

struct MapReport {
  MapKind kind = MapKind::invalid;
  std::vector<std::string> problems;
};

MapReport check_map(const ComplexMap& f, const ConicalComplex& src, const ConicalComplex& dst);

// Map of fans given by one linear map f on the shared ambient space: every
// source cone goes to the target cone holding f(interior point) in its
// relative interior. Throws MapInvalid when there is none.
ComplexMap induced_fan_map(const ConicalComplex& src, const ConicalComplex& dst, const IntMatrix& f);

// Image of a fan under one global linear map (must be injective on lattices).
ConicalComplex transform_fan(const ConicalComplex& k, const IntMatrix& u);

}  // namespace fanforge
