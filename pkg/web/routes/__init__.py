# web/routes package
