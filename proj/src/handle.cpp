#include "stallings/handle.hpp"

namespace stallings {

SubgroupHandle::SubgroupHandle(const InvAutomaton& aut)
    : aut_(canonicalize(trim(canonicalize(aut), TrimMode::core).automaton)) {}

}  // namespace stallings
