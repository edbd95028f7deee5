#pragma once

#include <array>
#include <string_view>

namespace covnet {

// Actor roles in the trafficking organization. Spelling is part of the
// roles CSV format and is case-sensitive.
enum class Role {
  Caretaker,
  Company,
  BodyGuard,
  Estafeta,
  Exploiter,
  PublicServant,
  Guide,
  Participant,
  Raitero,
  Recruiter,
  RecruiterVictim,
};

inline constexpr std::array<Role, 11> kAllRoles = {
    Role::Caretaker, Role::Company,     Role::BodyGuard,   Role::Estafeta,
    Role::Exploiter, Role::PublicServant, Role::Guide,    Role::Participant,
    Role::Raitero,   Role::Recruiter,   Role::RecruiterVictim};

std::string_view to_string(Role role);

/// Throws ParseError for anything outside the enumeration.
Role parse_role(std::string_view text);

}  // namespace covnet
