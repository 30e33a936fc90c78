#pragma once

// Shared test fixtures: small Wang tile systems, a picture tile system, and
// hand-built self-assembly automata with known bounded languages. All expected
// values asserted against these are frozen by hand derivation in the tests.

#include <string>
#include <vector>

#include "gridlang/grid_graph.hpp"
#include "gridlang/picture.hpp"
#include "gridlang/saha.hpp"
#include "gridlang/wang.hpp"

namespace gridlang::fixtures {

// --- pictures -------------------------------------------------------------

// h x w picture, every cell "a".
Picture all_a(int h, int w);

// k x k picture over {"0","1"} with "1" exactly on the main diagonal.
Picture diagonal_picture(int k);

// 1 x width picture labelled x1 x2 x3 x1 x2 x3 ...
Picture chain_row(int width);

// --- Wang tile systems ----------------------------------------------------

// One tile, every side "#": language = {1x1 [a]}.
WangSystem singleton_wts();

// Two tiles sharing one interior colour: language = {1x2 [a b]}.
WangSystem domino_wts();

// 13 tiles over colours {0,1}: language = {k x k all-"a" : k >= 3}.
// The colour below cell (i,j) is 1 iff i=j; right of (i,j) is 1 iff i=j+1.
WangSystem diagonal13_wts();

// The 13 tiles plus (1,1,#,#), usable only at (2,1) of the 2x2 square:
// language = {k x k all-"a" : k >= 2}.
WangSystem diagonal14_wts();

// --- picture tile system ----------------------------------------------------

// Windows collected from framed diagonal pictures of sizes 2..5 (16 distinct),
// projected to the single letter "a": language = {k x k all-"a" : k >= 2}.
PictureTileSystem diagonal_pts();

// --- automata ---------------------------------------------------------------

// Three nodes on a directed triangle of h-edges; rows assemble left to right
// with period x1 x2 x3 and may stop exactly after each x3:
// language = {1 x 3k : k >= 1}. The seeding hyperedge e1 doubles as a
// transition (q1 = {x1}), so normalization splits it.
Automaton chain_automaton();

// A 2x2 seed square whose bottom row fans out to one of two alternative third
// rows: language = exactly two 3x2 pictures (labels = node names).
Automaton fanout_automaton();

// Two independent seeds: language = {1x2 [a b], 1x3 [a c b]}.
Automaton two_init_automaton();

// A seed plus a hyperedge with q1 = q2 = {y}: one zero-displacement loop,
// reported strong; the tile-system translation must refuse it.
Automaton self_loop_automaton();

}  // namespace gridlang::fixtures
