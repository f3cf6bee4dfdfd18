import logging
import sys
from os import environ

from .app import app
from .utils import strtobool


def main(argv=None) -> int:
    debug = strtobool(environ.get("DEBUG"))
    builtin_commands = strtobool(environ.get("ENABLE_BUILTIN_COMMANDS"), True)
    command_blacklist = [command.strip() for command in environ.get("COMMAND_BLACKLIST", "").split(",")]
    command_dir = environ.get("COMMAND_DIR", None)
    telemetry = environ.get("TELEMETRY", "")
    telemetry_release = environ.get("TELEMETRY_RELEASE", None)

    if telemetry:
        import sentry_sdk
        sentry_sdk.init(telemetry, release=telemetry_release)

    if not debug:
        logging.basicConfig(level=logging.INFO)
    else:
        logging.basicConfig(level=logging.DEBUG)

    app.load_commands(builtin_commands, command_blacklist, command_dir)
    logging.debug(f"Commands: {sorted(app.commands)}")
    return app.run(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    sys.exit(main())
