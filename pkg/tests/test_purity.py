"""Attack code must run entirely on the adversary facade: no attack module
may touch trusted-side attributes, and the facade's decrypt methods trap."""

import ast
import pathlib

import pytest

import vhelab.attacks as attacks_pkg
from vhelab.errors import AccessDenied

from conftest import enc, make_ctx

FORBIDDEN_ATTRS = {
    "decrypt",
    "decrypt_bit",
    "encrypt_vec",
    "encrypt_bit",
    "_slots",
    "_value",
    "_dev",
    "_raw_eval",
    "_ctx",
    "_pe_alpha",
    "counters",
}

ATTACK_DIR = pathlib.Path(attacks_pkg.__file__).parent


def _attack_sources():
    return sorted(ATTACK_DIR.glob("*.py"))


def test_attack_package_has_expected_modules():
    names = {p.stem for p in _attack_sources()}
    assert {"gadgets", "replication", "oprf", "polyencode"} <= names


@pytest.mark.parametrize("path", _attack_sources(), ids=lambda p: p.stem)
def test_no_trusted_attribute_access(path):
    tree = ast.parse(path.read_text())
    offenders = [
        (node.attr, node.lineno)
        for node in ast.walk(tree)
        if isinstance(node, ast.Attribute) and node.attr in FORBIDDEN_ATTRS
    ]
    assert not offenders, f"{path.name} touches trusted attributes: {offenders}"


@pytest.mark.parametrize("path", _attack_sources(), ids=lambda p: p.stem)
def test_no_context_imports(path):
    # attack circuits receive an AdversaryView; importing the Context class
    # (or the trusted pe internals) would be the first step of a leak
    tree = ast.parse(path.read_text())
    banned = {"Context", "_raw_eval", "bind_session", "req"}
    for node in ast.walk(tree):
        if isinstance(node, ast.ImportFrom):
            got = {alias.name for alias in node.names} & banned
            assert not got, f"{path.name} imports {got}"


class TestRuntimeTraps:
    def test_view_decrypt_traps(self):
        ctx = make_ctx(7, 2)
        view = ctx.adversary_view()
        with pytest.raises(AccessDenied):
            view.decrypt(enc(ctx, [1, 2]))

    def test_view_decrypt_bit_traps(self):
        ctx = make_ctx(2, 1)
        view = ctx.adversary_view()
        with pytest.raises(AccessDenied):
            view.decrypt_bit(ctx.encrypt_bit(1))

    def test_view_exposes_no_encrypt(self):
        view = make_ctx(7, 2).adversary_view()
        assert not hasattr(view, "encrypt_vec")
        assert not hasattr(view, "encrypt_bit")

    def test_repr_shows_no_payload(self):
        ctx = make_ctx(7, 2)
        ct = enc(ctx, [5, 6])
        assert repr(ct) == f"VecCt(handle={ct.handle}, key=0, width=2, t=7, depth=0)"
