from pyperverse.algebra import algebra_B, check_module
from pyperverse.app import app
from pyperverse.checks import object_roundtrip_checks, roundtrip_checks, tea_checks
from pyperverse.documents import dump_morphism, dump_sheaf, load_flags, load_sheaf
from pyperverse.errors import BaseMismatchError, DocumentError
from pyperverse.linalg import to_strings
from pyperverse.models import Verdict
from pyperverse.sheaf import (SObject, hom_space, is_morphism, phi, psi, restrict_flags, validate_sobject,
                              validate_tea)


def _load(args, name: str):
    complex_ = app.load_complex(args.complex) if args.complex else None
    return load_sheaf(app.read(getattr(args, name)), complex_, app.settings.get("strict_maximal"))


def _load_kind(args, name: str, kind: str):
    obj = _load(args, name)
    if isinstance(obj, SObject) != (kind == "S"):
        raise DocumentError(f"{args.command} expects a document of kind {kind}")
    return obj


@app.command("tea-check", help="Check the equivalence axiom of a sheaf document.", inputs=("sheaf",),
             options=("complex", "samples", "seed"))
def tea_check(args):
    obj = _load(args, "sheaf")
    if isinstance(obj, SObject):
        return app.report(args, {"kind": "S", "flags": len(obj.data.stalks)},
                          {"membership": validate_sobject(obj)})
    results = {"kind": "R", "stalks": sum(obj.stalks.values())}
    verdicts = {
        "tea": validate_tea(obj),
        "b_relations": check_module(algebra_B(obj.complex, obj.perversity), obj),
    }
    if args.samples:
        sampled, agreement = tea_checks(obj.complex, obj.perversity, args.samples, args.seed,
                                        app.settings.get("module_budget"))
        results["sampled"] = sampled
        verdicts.update(agreement)
    return app.report(args, results, verdicts)


@app.command("phi", help="Move an R-object to the subdivision.", inputs=("sheaf",), options=("complex",))
def phi_command(args):
    obj = _load_kind(args, "sheaf", "R")
    image = phi(obj)
    verdicts = {
        "membership": validate_sobject(image),
        "inverse": Verdict(psi(image).same_as(obj), None),
    }
    return app.report(args, {"sobject": dump_sheaf(image)}, verdicts)


@app.command("psi", help="Move an S-object back to the complex.", inputs=("sheaf",), options=("complex",))
def psi_command(args):
    obj = _load_kind(args, "sheaf", "S")
    image = psi(obj)
    verdicts = {
        "tea": validate_tea(image),
        "inverse": Verdict(phi(image).same_as(obj), None),
    }
    return app.report(args, {"object": dump_sheaf(image)}, verdicts)


@app.command("roundtrip", help="Psi after Phi on seeded random objects, or on the --sheaf object.",
             options=("perversity", "seed", "samples", "sheaf"))
def roundtrip(args):
    complex_ = app.load_complex(args.complex)
    delta = app.perversity(args, complex_)
    if args.sheaf:
        obj = load_sheaf(app.read(args.sheaf), complex_, app.settings.get("strict_maximal"))
        if isinstance(obj, SObject):
            raise DocumentError("roundtrip --sheaf expects a document of kind R")
        if obj.perversity != delta:
            raise BaseMismatchError(f"The object lives over {obj.perversity}, not {delta}")
        return app.report(args, *object_roundtrip_checks(obj))
    samples = args.samples if args.samples is not None else app.settings.get("roundtrip_samples")
    return app.report(args, *roundtrip_checks(complex_, delta, samples, args.seed,
                                              app.settings.get("module_budget")))


@app.command("hom", help="A basis of morphisms between two objects.", inputs=("source", "target"),
             options=("complex",))
def hom(args):
    src, dst = _load(args, "source"), _load(args, "target")
    if isinstance(src, SObject) != isinstance(dst, SObject):
        raise DocumentError("hom expects two documents of the same kind")
    data_src, data_dst = (src.data, dst.data) if isinstance(src, SObject) else (src, dst)
    space = hom_space(data_src, data_dst)
    results = {
        "dimension": space.dimension,
        "basis": [dump_morphism(m, data_src.quiver) for m in space.basis],
    }
    bad = [i for i, m in enumerate(space.basis) if not is_morphism(data_src, data_dst, m)]
    validate = validate_sobject if isinstance(src, SObject) else validate_tea
    verdicts = {
        "basis": Verdict(not bad, {"elements": bad} if bad else None),
        "source": validate(src),
        "target": validate(dst),
    }
    if not isinstance(src, SObject) and verdicts["source"] and verdicts["target"]:
        lifted = hom_space(phi(src).data, phi(dst).data).dimension
        verdicts["functoriality"] = Verdict(lifted == space.dimension,
                                            None if lifted == space.dimension else {"subdivided": lifted})
    return app.report(args, results, verdicts)


@app.command("restrict", help="Restrict an S-object to a closed set of flags.", inputs=("sheaf", "flags"),
             options=("complex",))
def restrict(args):
    obj = _load_kind(args, "sheaf", "S")
    flags = load_flags(app.read(args.flags), obj.base)
    part = restrict_flags(obj, flags)
    q = part.quiver
    results = {
        "flags": len(part.stalks),
        "stalks": {q.node_key(v): n for v, n in part.stalks.items()},
        "maps": {q.arrow_key(a): to_strings(m) for a, m in part.maps.items() if m.shape[0] and m.shape[1]},
    }
    return app.report(args, results, {"tea": validate_tea(part)})
