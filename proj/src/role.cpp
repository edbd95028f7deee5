#include "covnet/role.hpp"

#include <string>

#include "covnet/errors.hpp"

namespace covnet {

std::string_view to_string(Role role) {
  switch (role) {
    case Role::Caretaker: return "Caretaker";
    case Role::Company: return "Company";
    case Role::BodyGuard: return "BodyGuard";
    case Role::Estafeta: return "Estafeta";
    case Role::Exploiter: return "Exploiter";
    case Role::PublicServant: return "PublicServant";
    case Role::Guide: return "Guide";
    case Role::Participant: return "Participant";
    case Role::Raitero: return "Raitero";
    case Role::Recruiter: return "Recruiter";
    case Role::RecruiterVictim: return "RecruiterVictim";
  }
  return "?";
}

Role parse_role(std::string_view text) {
  for (Role r : kAllRoles) {
    if (to_string(r) == text) return r;
  }
  throw ParseError("unknown role '" + std::string(text) + "'");
}

}  // namespace covnet
