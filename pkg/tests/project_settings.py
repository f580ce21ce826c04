settings = {
    'series': {
        'order': 10,
        'kinds': ['a4', 'a6', 'j']},
    'subgroups': {
        'bound': 12},
    'verify': {
        'max': 6},
    'output': {
        'json': True}}
