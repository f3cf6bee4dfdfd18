import fastjsonschema

_label = {
    "type": "string",
    "minLength": 1
}

_fraction = {
    "anyOf": [
        {"type": "integer"},
        {"type": "string", "pattern": "^\\s*-?[0-9]+(\\s*/\\s*[0-9]*[1-9][0-9]*)?\\s*$"}
    ]
}

_matrix = {
    "type": "array",
    "items": {
        "type": "array",
        "items": _fraction
    }
}

raw_complex_schema = {
    "$schema": "http://json-schema.org/draft-04/schema#",
    "type": "object",
    "properties": {
        "vertices": {
            "type": "array",
            "items": _label
        },
        "maximal_simplices": {
            "type": "array",
            "items": {
                "type": "array",
                "minItems": 1,
                "items": _label
            }
        }
    },
    "required": [
        "vertices",
        "maximal_simplices"
    ]
}

raw_perversity_schema = {
    "$schema": "http://json-schema.org/draft-04/schema#",
    "type": "array",
    "minItems": 1,
    "items": {
        "type": "integer"
    }
}

raw_sheaf_schema = {
    "$schema": "http://json-schema.org/draft-04/schema#",
    "type": "object",
    "properties": {
        "kind": {
            "enum": ["R", "S"]
        },
        "complex": raw_complex_schema,
        "perversity": raw_perversity_schema,
        "stalks": {
            "type": "object",
            "additionalProperties": {
                "type": "integer",
                "minimum": 0
            }
        },
        "maps": {
            "type": "object",
            "additionalProperties": _matrix
        }
    },
    "required": [
        "perversity",
        "stalks"
    ]
}

raw_algebra_schema = {
    "$schema": "http://json-schema.org/draft-04/schema#",
    "type": "object",
    "properties": {
        "kind": {
            "enum": ["algebra"]
        },
        "base": {
            "enum": ["A", "B"]
        },
        "relations": {
            "type": "array",
            "items": {
                "type": "object",
                "properties": {
                    "paths": {
                        "type": "array",
                        "minItems": 1,
                        "items": {
                            "type": "array",
                            "minItems": 1,
                            "items": {
                                "type": "string"
                            }
                        }
                    },
                    "rows": _matrix
                },
                "required": [
                    "paths",
                    "rows"
                ]
            }
        }
    },
    "required": [
        "base"
    ]
}

raw_flag_set_schema = {
    "$schema": "http://json-schema.org/draft-04/schema#",
    "type": "object",
    "properties": {
        "flags": {
            "type": "array",
            "items": {
                "type": "array",
                "minItems": 1,
                "items": {
                    "type": "string"
                }
            }
        }
    },
    "required": [
        "flags"
    ]
}

raw_settings_schema = {
    "$schema": "http://json-schema.org/draft-04/schema#",
    "type": "object",
    "properties": {
        "strict_maximal": {"type": "boolean"},
        "max_steps": {"type": "integer", "minimum": 1},
        "roundtrip_samples": {"type": "integer", "minimum": 0},
        "module_budget": {"type": "integer", "minimum": 0},
        "tea_samples": {"type": "integer", "minimum": 0},
        "report_storage": {"type": ["string", "null"]}
    },
    "additionalProperties": False
}

complex_schema = fastjsonschema.compile(raw_complex_schema)
perversity_schema = fastjsonschema.compile(raw_perversity_schema)
sheaf_schema = fastjsonschema.compile(raw_sheaf_schema)
algebra_schema = fastjsonschema.compile(raw_algebra_schema)
flag_set_schema = fastjsonschema.compile(raw_flag_set_schema)
settings_schema = fastjsonschema.compile(raw_settings_schema)
