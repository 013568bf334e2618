"""Exception hierarchy.

Every library error carries a stable machine-readable ``code`` that the CLI
echoes in its error payload.
"""


class HGroupsError(Exception):
    code = "error"

    def __init__(self, message="", **details):
        super().__init__(message)
        self.details = details

    def payload(self):
        return {"code": self.code, "message": str(self), "details": self.details}


class ParseError(HGroupsError):
    code = "parse_error"


class NonBijectiveGenerator(HGroupsError):
    code = "non_bijective_generator"


class OrderLimitExceeded(HGroupsError):
    code = "order_limit_exceeded"


class NotAHomomorphism(HGroupsError):
    code = "not_a_homomorphism"


class NotNormal(HGroupsError):
    code = "not_normal"


class NotASubgroup(HGroupsError):
    code = "not_a_subgroup"


class NotAbelian(HGroupsError):
    code = "not_abelian"


class ObjectNotFound(HGroupsError):
    code = "object_not_found"


class PointNotFound(HGroupsError):
    code = "point_not_found"


class GroupMismatch(HGroupsError):
    code = "group_mismatch"


class SignatureMismatch(HGroupsError):
    code = "signature_mismatch"


class NotEquivariant(HGroupsError):
    code = "not_equivariant"


class InvalidAction(HGroupsError):
    code = "invalid_action"


class InvalidGroupoid(HGroupsError):
    code = "invalid_groupoid"


class CarrierMismatch(HGroupsError):
    code = "carrier_mismatch"


class UnitMismatch(HGroupsError):
    code = "unit_mismatch"


class NotConnected(HGroupsError):
    code = "not_connected"


class NotPointed(HGroupsError):
    code = "not_pointed"


class DegreeUnsupported(HGroupsError):
    code = "degree_unsupported"


class BudgetExceeded(HGroupsError):
    code = "budget_exceeded"


class NotACocycle(HGroupsError):
    code = "not_a_cocycle"


class NotCentral(HGroupsError):
    code = "not_central"


class NotExact(HGroupsError):
    code = "not_exact"
