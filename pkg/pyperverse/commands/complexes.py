from pyperverse.app import app
from pyperverse.checks import census_checks, subdivision_checks


@app.command("validate", help="Check a complex document and report its census.")
def validate(args):
    complex_ = app.load_complex(args.complex)
    return app.report(args, *census_checks(complex_))


@app.command("subdivide", help="List the flags of the barycentric subdivision.")
def subdivide(args):
    complex_ = app.load_complex(args.complex)
    return app.report(args, *subdivision_checks(complex_))
