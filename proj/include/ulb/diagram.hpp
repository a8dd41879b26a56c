#ifndef ULB_DIAGRAM_HPP
#define ULB_DIAGRAM_HPP

#include "ulb/linalg.hpp"

#include <array>
#include <map>
#include <string>
#include <vector>

namespace ulb {

struct PDError : std::runtime_error {
    explicit PDError(const std::string& what) : std::runtime_error(what) {}
};

// Planar diagram code: one 4-tuple of arc labels per crossing, listed
// counterclockwise starting from the incoming under-strand.
struct PDCode {
    std::vector<std::array<int, 4>> crossings;
};

// Accepts PD[X[1,4,2,3],...] text (case-insensitive heads, flexible
// whitespace) and the JSON array-of-4-tuples form [[1,4,2,3],...].
PDCode pd_from_text(const std::string& text);

// Combinatorial analysis of a PD code: faces of the 4-valent planar graph,
// chessboard coloring, strand orientation, component structure.
struct DiagramAnalysis {
    PDCode code;
    std::size_t num_faces = 0;
    std::vector<int> face_of_corner; // corner (c, j) between rays j, j+1 -> face id
    std::vector<int> face_color;     // 0/1 per face, color 0 at face 0
    std::size_t num_components = 0;
    std::vector<int> under_component; // per crossing
    std::vector<int> over_component;  // per crossing
    std::vector<int> over_in_slot;    // 1 or 3: incoming over-strand slot
    std::vector<int> arc_component;   // dense arc index -> component
    std::map<int, int> arc_index;     // label -> dense arc index

    int corner_face(std::size_t c, int j) const { return face_of_corner[4 * c + ((j % 4 + 4) % 4)]; }
    int corner_color(std::size_t c, int j) const { return face_color[corner_face(c, j)]; }
};

DiagramAnalysis analyze(const PDCode& code);

struct GoeritzData {
    IntMatrix white_gram; // regions of color 0, one region deleted
    IntMatrix black_gram; // regions of color 1, one region deleted
    long gl_correction = 0;
    long signature = 0;
    Integer determinant = 0;
    bool nullity_zero = false;
};

// Both Goeritz matrices plus determinant data; signature and gl_correction
// are filled by signature_gl.
GoeritzData goeritz_from_pd(const PDCode& code);

// Murasugi signature via the Goeritz form and the Gordon-Litherland
// correction.  `orientation` holds one +-1 flag per component (components
// ordered by their smallest arc label); the empty vector means all +1.
long signature_gl(const PDCode& code, const std::vector<int>& orientation = {});

// Fills signature (and gl_correction) into a GoeritzData for one orientation.
GoeritzData goeritz_with_signature(const PDCode& code, const std::vector<int>& orientation = {});

std::pair<Integer, bool> determinant_and_nullity(const GoeritzData& data);

// The mirror image: every crossing switched, implemented by rotating each
// tuple to start at the incoming over-strand.
PDCode mirror(const PDCode& code);

// Pairwise linking numbers, indexed by component pairs (i, j) with i < j.
std::map<std::pair<int, int>, long> linking_numbers(const PDCode& code,
                                                    const std::vector<int>& orientation = {});

// Signatures for all 2^{k-1} quasi-orientations (component 0 fixed to +1),
// sorted ascending.
std::vector<long> quasi_orientation_signatures(const PDCode& code);

} // namespace ulb

#endif
