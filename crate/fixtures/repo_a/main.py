print('not documentation')
