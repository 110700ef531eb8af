#pragma once

// Hand-built graph pairs shared by the unit and acceptance tests.

#include <vector>

#include "netalign/graph.hpp"

namespace fixture {

using netalign::Edge;
using netalign::Graph;
using netalign::NodeId;
using netalign::NodeMapping;

// One matched pair (c, C). Source node a touches c; target nodes A and B both
// touch C, with degrees 9 and 6. Since c is a's only mapped neighbour,
// |pi(N_a) ∪ N_A| = 9 and |pi(N_a) ∪ N_B| = 6 while both pairs have one ACN.
struct JaccardBias {
    Graph source;
    Graph target;
    NodeMapping mapping;
    NodeId a = 0;
    NodeId c = 1;
    NodeId big = 0;    // A
    NodeId small = 1;  // B
    NodeId hub = 2;    // C
};

inline JaccardBias jaccard_bias() {
    JaccardBias f;
    // source: a=0, c=1, plus two unmatched neighbours of a and one of c
    const std::vector<Edge> es = {{0, 1}, {0, 2}, {0, 3}, {1, 4}};
    f.source = Graph::from_edges(5, es);
    // target: A=0, B=1, C=2, others 3..10
    std::vector<Edge> et = {{0, 2}, {1, 2}};
    for (NodeId x = 3; x <= 10; ++x) et.emplace_back(0, x);  // A: C + 8 others
    for (NodeId x = 3; x <= 7; ++x) et.emplace_back(1, x);   // B: C + 5 others
    f.target = Graph::from_edges(11, et);
    f.mapping.add(f.c, f.hub);
    return f;
}

}  // namespace fixture
