#ifndef FIELDTOPO_H
#define FIELDTOPO_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/*
 Result of every fallible call. The numbering matches the exit codes of
 the `fieldtopo` command-line tool.
 */
typedef enum FtStatus {
  FT_STATUS_OK = 0,
  /*
   Unreadable mesh or field text.
   */
  FT_STATUS_PARSE = 2,
  /*
   The mesh is not an oriented 2-manifold or has degenerate faces.
   */
  FT_STATUS_INVALID_MESH = 3,
  /*
   Field and mesh sizes or orders disagree.
   */
  FT_STATUS_FIELD_MISMATCH = 4,
  /*
   The operation needs a different topology (closed, bounded, disk).
   */
  FT_STATUS_WRONG_TOPOLOGY = 5,
  /*
   Prescribed indices cannot be realised.
   */
  FT_STATUS_INFEASIBLE = 6,
  /*
   Null pointer, bad vertex id, unreadable file or similar.
   */
  FT_STATUS_INVALID_ARGUMENT = 7,
  /*
   A sum was too far from a multiple of 1/n to snap.
   */
  FT_STATUS_SNAP_RESIDUAL = 8,
  /*
   A bug inside the library; the message says where.
   */
  FT_STATUS_INTERNAL = 9,
} FtStatus;

/*
 Opaque handle to an n-symmetry direction field.
 */
typedef struct FtField FtField;

/*
 Opaque handle to a mesh with its frames and snapping tolerance.
 */
typedef struct FtMesh FtMesh;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message of the last failed call on this thread, or NULL after a
 successful call. The pointer stays valid until the next `ft_*` call on
 the same thread.
 */
const char *ft_last_error_message(void);

/*
 Releases a string returned by this library. NULL is ignored.

 # Safety
 `s` must come from this library and not have been freed.
 */
void ft_string_free(char *s);

/*
 Loads an OBJ or OFF mesh; the format follows the file extension.

 # Safety
 `path` must be a NUL-terminated string and `out_mesh` writable.
 */
enum FtStatus ft_mesh_load(const char *path, struct FtMesh **out_mesh);

/*
 Builds a mesh from `num_vertices` xyz triples and `num_faces` vertex
 triples, faces counterclockwise when seen from outside.

 # Safety
 `positions` must hold `3 * num_vertices` doubles, `faces` must hold
 `3 * num_faces` indices and `out_mesh` must be writable.
 */
enum FtStatus ft_mesh_from_arrays(const double *positions,
                                  size_t num_vertices,
                                  const uint32_t *faces,
                                  size_t num_faces,
                                  struct FtMesh **out_mesh);

/*
 Releases a mesh. NULL is ignored.

 # Safety
 `mesh` must come from this library and not have been freed. Fields made
 for it stay valid on their own.
 */
void ft_mesh_free(struct FtMesh *mesh);

/*
 Sets the snapping tolerance, in turns per edge of the measured cycle.
 The default is 1e-6.

 # Safety
 `mesh` must be a live handle.
 */
enum FtStatus ft_mesh_set_tolerance(struct FtMesh *mesh, double tolerance);

/*
 Vertex, edge and face counts. Any out-pointer may be NULL.

 # Safety
 `mesh` must be a live handle; non-null out-pointers must be writable.
 */
enum FtStatus ft_mesh_counts(const struct FtMesh *mesh,
                             size_t *out_vertices,
                             size_t *out_edges,
                             size_t *out_faces);

/*
 Euler characteristic, number of boundary loops and genus.

 # Safety
 `mesh` must be a live handle; non-null out-pointers must be writable.
 */
enum FtStatus ft_mesh_topology(const struct FtMesh *mesh,
                               int64_t *out_chi,
                               size_t *out_boundary_loops,
                               uint32_t *out_genus);

/*
 The field with angle 0 in every face frame and no period jumps.

 # Safety
 `mesh` must be a live handle and `out_field` writable.
 */
enum FtStatus ft_field_constant(const struct FtMesh *mesh,
                                uint32_t order,
                                struct FtField **out_field);

/*
 A seeded random field: uniform angles and jumps in
 `[-jump_range, jump_range]`. The same seed gives the same field.

 # Safety
 `mesh` must be a live handle and `out_field` writable.
 */
enum FtStatus ft_field_random(const struct FtMesh *mesh,
                              uint32_t order,
                              uint64_t seed,
                              uint32_t jump_range,
                              struct FtField **out_field);

/*
 Reads a field file (`NSYMFIELD 1`) written for `mesh`.

 # Safety
 `mesh` must be a live handle, `path` NUL-terminated and `out_field`
 writable.
 */
enum FtStatus ft_field_load(const struct FtMesh *mesh,
                            const char *path,
                            struct FtField **out_field);

/*
 Builds a field of symmetry `order` whose interior vertex `vertices[i]`
 has index `numerators[i] / denominators[i]`; other interior vertices are
 regular. On closed meshes the indices must sum to the Euler
 characteristic, otherwise `FT_STATUS_INFEASIBLE` is returned.

 # Safety
 The three arrays must each hold `count` entries (they may be NULL when
 `count` is 0); `mesh` must be live and `out_field` writable.
 */
enum FtStatus ft_field_prescribe(const struct FtMesh *mesh,
                                 uint32_t order,
                                 const uint32_t *vertices,
                                 const int64_t *numerators,
                                 const int64_t *denominators,
                                 size_t count,
                                 struct FtField **out_field);

/*
 Releases a field. NULL is ignored.

 # Safety
 `field` must come from this library and not have been freed.
 */
void ft_field_free(struct FtField *field);

/*
 Symmetry order n of the field, or 0 for NULL.

 # Safety
 `field` must be NULL or a live handle.
 */
uint32_t ft_field_order(const struct FtField *field);

/*
 Writes the field in the `NSYMFIELD 1` text format.

 # Safety
 Handles must be live and `out_text` writable; free the result with
 `ft_string_free`.
 */
enum FtStatus ft_field_to_string(const struct FtMesh *mesh,
                                 const struct FtField *field,
                                 char **out_text);

/*
 Exact index of interior vertex `v` as the reduced fraction
 `*out_num / *out_den`.

 # Safety
 Handles must be live and the out-pointers writable.
 */
enum FtStatus ft_singularity_index(const struct FtMesh *mesh,
                                   const struct FtField *field,
                                   int64_t v,
                                   int64_t *out_num,
                                   int64_t *out_den);

/*
 Sum of all interior vertex indices as a reduced fraction.

 # Safety
 Handles must be live and the out-pointers writable.
 */
enum FtStatus ft_total_index(const struct FtMesh *mesh,
                             const struct FtField *field,
                             int64_t *out_num,
                             int64_t *out_den);

/*
 Checks Poincaré-Hopf on a closed mesh or the boundary number theorem on
 a bounded one. `*out_verdict` is 1 when the identity holds and 0 when it
 fails; `out_json` may be NULL, otherwise it receives the full report.

 # Safety
 Handles must be live and `out_verdict` writable.
 */
enum FtStatus ft_check(const struct FtMesh *mesh,
                       const struct FtField *field,
                       int32_t *out_verdict,
                       char **out_json);

/*
 Closes a disk into a sphere and compares the index at a vertex with the
 index at the cone apex. `designated` picks the vertex, or -1 for the
 default. `*out_verdict` is 1 or 0, or -1 when the disk has two or more
 singularities and no single verdict applies.

 # Safety
 Handles must be live and `out_verdict` writable.
 */
enum FtStatus ft_duality(const struct FtMesh *mesh,
                         const struct FtField *field,
                         int64_t designated,
                         int32_t *out_verdict,
                         char **out_json);

/*
 Compares two fields on the same mesh by their turning numbers along the
 mesh's cycle basis and by their vertex indices. `*out_verdict` is 1 when
 they agree everywhere.

 # Safety
 Handles must be live and `out_verdict` writable.
 */
enum FtStatus ft_equivalence(const struct FtMesh *mesh,
                             const struct FtField *first,
                             const struct FtField *second,
                             int32_t *out_verdict,
                             char **out_json);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FIELDTOPO_H */
