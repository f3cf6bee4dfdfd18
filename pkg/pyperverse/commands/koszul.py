from pyperverse.app import app
from pyperverse.checks import extdual_checks, koszul_checks


@app.command("koszul", help="Minimal resolutions of the simples and their Betti tables.",
             options=("perversity", "which", "max_steps", "algebra"))
def koszul(args):
    complex_ = app.load_complex(args.complex)
    delta = app.perversity(args, complex_)
    return app.report(args, *koszul_checks(complex_, delta, args.which, app.setting(args, "max_steps"),
                                           app.load_algebra(args, complex_, delta)))


@app.command("extdual", help="Ext between simples of A and B, or of --algebra, against the other algebra.",
             options=("perversity", "max_steps", "algebra"))
def extdual(args):
    complex_ = app.load_complex(args.complex)
    delta = app.perversity(args, complex_)
    return app.report(args, *extdual_checks(complex_, delta, app.setting(args, "max_steps"),
                                            app.load_algebra(args, complex_, delta)))
