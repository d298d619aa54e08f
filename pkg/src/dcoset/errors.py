"""Exceptions raised by dcoset."""


class DcosetError(Exception):
    pass


class UnknownLetter(DcosetError, ValueError):
    pass


class AlphabetMismatch(DcosetError, ValueError):
    pass


class NotFolded(DcosetError, ValueError):
    pass


class Disconnected(DcosetError, ValueError):
    pass


class NotInSubgroup(DcosetError, ValueError):
    pass


class MemberAlready(DcosetError, ValueError):
    """f already lies in H, so there is nothing to separate."""


class IsMember(DcosetError, ValueError):
    """f lies in the double coset HgK, so no separating subgroup exists."""


class MalformedCertificate(DcosetError, ValueError):
    pass
