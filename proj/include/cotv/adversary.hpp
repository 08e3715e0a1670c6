#pragma once

#include "cotv/dimensions.hpp"
#include "cotv/learners.hpp"

namespace cotv {

struct AdversaryRun
{
    Transcript transcript;
    // A verifier consistent with every revealed label.
    std::size_t consistent_verifier = 0;
};

// Walks the tree from the root, answering each prediction with the edge that
// contradicts it. Plain/SC/WSC trees take a prefix learner, SCL trees a
// chain-of-thought learner. Throws TreeNotShattered.
AdversaryRun play_tree_adversary(const MistakeTree& tree, const VersionSpace& vs, PrefixLearner& learner);
AdversaryRun play_tree_adversary(const MistakeTree& tree, const VersionSpace& vs, CotLearner& learner);

// Singleton-bitstring lower bound: presents known bits followed by ones and
// places the fault where the learner did not. ClassMismatch unless cls is
// singleton_bitstring_class(L).
AdversaryRun prop31_adversary(const ClassPtr& cls, CotLearner& learner);

// Complement-class lower bound against sound learners: every designated trace
// but the last is revealed correct. Throws LearnerNotSound when the learner
// accepts a trace some consistent verifier rejects.
AdversaryRun prop32_adversary(const ClassPtr& cls, CotLearner& learner);

} // namespace cotv
