from pyperverse.app import app
from pyperverse.checks import triangulation_checks


@app.command("ptriang", help="Perverse simplices and skeleta for one perversity.", options=("perversity", "clamp"))
def ptriang(args):
    complex_ = app.load_complex(args.complex)
    return app.report(args, *triangulation_checks(complex_, app.perversity(args, complex_), args.clamp))
